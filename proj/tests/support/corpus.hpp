#pragma once

// Generated test curves shared by unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "conecurve/curve.hpp"

namespace conecurve::corpus {

struct Named {
  std::string name;
  PolylineCurve curve;
};

inline PolylineCurve from_points(std::vector<Point> pts, Rational err = 0) { return PolylineCurve(std::move(pts), err); }

// Zigzag through `teeth` teeth with slopes +-slope, starting at `start`,
// covering `width` in x.
inline std::vector<Point> zigzag(const Point& start, const Rational& width, unsigned teeth, const Rational& slope) {
  std::vector<Point> pts{start};
  Rational step = width / (2 * teeth);
  Point cur = start;
  for (unsigned i = 0; i < 2 * teeth; ++i) {
    Rational dy = (i % 2 == 0 ? slope : Rational(-slope)) * step;
    cur = {cur.x + step, cur.y + dy};
    pts.push_back(cur);
  }
  return pts;
}

// Concave rising head c*sqrt(x) on [0, 1/4], shallow zigzag on [1/4, 3/4],
// concave falling tail c*sqrt(1 - x) on [3/4, 1]. With flip the curve is
// mirrored in y (convex pieces).
inline PolylineCurve hill(const Rational& c, unsigned teeth, const Rational& slope, unsigned levels, bool flip) {
  std::vector<Point> pts;
  const Rational q(1, 4);
  auto f = [&](const Rational& u) { return Rational(c * sqrt_floor(u)); };
  auto sign = [&](Rational y) { return flip ? Rational(-y) : y; };
  std::vector<Rational> head{Rational(0)};
  for (int j = static_cast<int>(levels); j >= 0; --j) head.push_back(q * pow2(-j));
  for (const Rational& x : head) pts.push_back({x, sign(f(x))});
  Point mid_start{q, sign(f(q))};
  auto mid = zigzag(mid_start, Rational(1, 2), teeth, flip ? Rational(-slope) : slope);
  for (std::size_t i = 1; i < mid.size(); ++i) pts.push_back(mid[i]);
  // tail value at 3/4 equals the head value at 1/4, so the zigzag (which
  // returns to its start height) joins continuously
  for (int j = 1; j <= static_cast<int>(levels); ++j) {
    Rational u = q * pow2(-j);
    pts.push_back({1 - u, sign(f(u))});
  }
  pts.push_back({Rational(1), Rational(0)});
  return PolylineCurve(std::move(pts), pow2(-static_cast<int>(kSnapBits)));
}

// Zigzag with random slopes in (-bound, bound).
inline PolylineCurve bounded_slope_walk(std::mt19937_64& rng, std::size_t n, const Rational& bound) {
  std::uniform_int_distribution<int> d(-999, 999);
  std::vector<Point> pts{{Rational(0), Rational(0)}};
  for (std::size_t i = 1; i < n; ++i) {
    Rational s = bound * Rational(d(rng)) / 1000;
    Rational dx(1, static_cast<long>(n - 1));
    pts.push_back({pts.back().x + dx, pts.back().y + s * dx});
  }
  return PolylineCurve(std::move(pts));
}

// Curves expected to satisfy the two-point hypothesis for the vertical cone
// with tan(phi) = 1 (lines containing steep sampled segments count their
// breakpoints only).
inline std::vector<Named> proposition_corpus() {
  std::vector<Named> out;
  auto poly = [](std::vector<Rational> c, Rational lo, Rational hi, std::size_t n) {
    return sample_to_polyline(FunctionSpec::polynomial(std::move(c), lo, hi), {n, 0});
  };
  // convex
  out.push_back({"x^2 on [-1,1]", poly({0, 0, 1}, -1, 1, 41)});
  out.push_back({"x^2 + x on [-2,1]", poly({0, 1, 1}, -2, 1, 61)});
  out.push_back({"x^4 on [-1,1]", poly({0, 0, 0, 0, 1}, -1, 1, 48)});
  out.push_back({"x^3 on [1/4,1]", poly({0, 0, 0, 1}, Rational(1, 4), 1, 33)});
  out.push_back({"2x^2 - 3 on [0,2]", poly({-3, 0, 2}, 0, 2, 25)});
  out.push_back({"x^2/4 on [-3,3]", poly({0, 0, Rational(1, 4)}, -3, 3, 37)});
  // concave
  out.push_back({"-x^2 on [-1,1]", poly({0, 0, -1}, -1, 1, 41)});
  out.push_back({"1 - x^4 on [-1,1]", poly({1, 0, 0, 0, -1}, -1, 1, 40)});
  out.push_back({"sqrt on [0,1]", sample_to_polyline(FunctionSpec::square_root(0, 1), {17, 12})});
  out.push_back({"sqrt on [1/4,4]", sample_to_polyline(FunctionSpec::square_root(Rational(1, 4), 4), {40, 0})});
  out.push_back({"x - x^3 on [0,1]", poly({0, 1, 0, -1}, 0, 1, 30)});
  out.push_back({"-3x^2 on [-1/2,1]", poly({0, 0, -3}, Rational(-1, 2), 1, 31)});
  // bounded slope
  std::mt19937_64 rng(20261014);
  for (int i = 0; i < 6; ++i) {
    out.push_back({"walk " + std::to_string(i), bounded_slope_walk(rng, 20 + 7 * i, Rational(1, 2))});
  }
  out.push_back({"sawtooth 1/2", from_points(zigzag({0, 0}, 1, 8, Rational(1, 2)))});
  out.push_back({"flat", from_points({{0, 1}, {Rational(1, 2), 1}, {1, 1}})});
  // glued head / middle / tail
  const Rational cs[] = {Rational(1, 2), Rational(1), Rational(2)};
  int g = 0;
  for (const Rational& c : cs) {
    for (bool flip : {false, true}) {
      unsigned teeth = 3 + (g + 1) % 3;
      out.push_back({"hill " + std::to_string(g++), hill(c, teeth, Rational(1, 2), 10, flip)});
    }
  }
  out.push_back({"hill steep", hill(4, 5, Rational(2, 5), 12, false)});
  out.push_back({"valley fine", hill(Rational(3, 2), 9, Rational(1, 4), 14, true)});
  out.push_back({"hill coarse", hill(1, 2, Rational(3, 4), 6, false)});
  out.push_back({"valley coarse", hill(2, 4, Rational(3, 5), 8, true)});
  return out;
}

}  // namespace conecurve::corpus
