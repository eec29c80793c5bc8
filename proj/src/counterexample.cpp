#include "conecurve/counterexample.hpp"

#include <algorithm>

#include "conecurve/errors.hpp"

namespace conecurve {

void CounterexampleParams::validate() const {
  if (sgn(lambda) <= 0) throw DomainError("lambda must be positive");
  if (depth < 2) throw DomainError("counterexample depth must be at least 2");
  if (grid < 2) throw DomainError("counterexample grid must be at least 2");
  if (depth + grid > 400) throw DomainError("counterexample depth/grid too large");
}

Rational sequence_a(unsigned k) {
  if (k == 0) throw DomainError("a_k is defined for k >= 1");
  return Rational(1, 2) - pow2(-static_cast<int>(k));
}

Rational sequence_b(unsigned k, const Rational& lambda) {
  if (k == 0) throw DomainError("b_k is defined for k >= 1");
  // (-1/2)^(k-1)
  Rational p = pow2(-static_cast<int>(k - 1));
  if ((k - 1) % 2 == 1) p = -p;
  return lambda / 6 * (1 - p);
}

Rational sequence_b_recursive(unsigned k, const Rational& lambda) {
  if (k == 0) throw DomainError("b_k is defined for k >= 1");
  Rational prev = 0;
  Rational cur = lambda / 4;
  if (k == 1) return prev;
  for (unsigned i = 2; i < k; ++i) {
    Rational next = (cur + prev) / 2;
    prev = cur;
    cur = next;
  }
  return cur;
}

Rational piece_value(unsigned k, const Rational& x, const Rational& lambda, unsigned bits) {
  Rational ak = sequence_a(k);
  Rational ak1 = sequence_a(k + 1);
  if (x < ak || x > ak1) throw DomainError("x outside the piece interval [a_k, a_{k+1}]");
  if (x == ak) return sequence_b(k, lambda);
  if (x == ak1) return sequence_b(k + 1, lambda);
  // |coefficient| * sqrt(x - a_k) = sqrt(lambda^2 (x - a_k) / 2^(k+1))
  Rational radicand = lambda * lambda * (x - ak) * pow2(-static_cast<int>(k + 1));
  Rational root = sqrt_floor(radicand, bits);
  Rational bk = sequence_b(k, lambda);
  return (k % 2 == 1) ? Rational(bk + root) : Rational(bk - root);
}

Rational counterexample_value(const Rational& x, const Rational& lambda, unsigned depth) {
  if (x < 0 || x > 1) throw DomainError("counterexample is defined on [0, 1]");
  Rational half(1, 2);
  Rational u = x <= half ? x : Rational(1 - x);
  if (u == half) return lambda / 6;
  Rational tail_start = sequence_a(depth + 1);
  if (u >= tail_start) {
    Rational b_tail = sequence_b(depth + 1, lambda);
    return b_tail + (lambda / 6 - b_tail) * (u - tail_start) / (half - tail_start);
  }
  for (unsigned k = 1; k <= depth; ++k) {
    if (u <= sequence_a(k + 1)) return piece_value(k, u, lambda);
  }
  throw DomainError("unreachable counterexample evaluation");
}

std::vector<Rational> counterexample_nodes(unsigned depth, unsigned grid) {
  std::vector<Rational> left;
  for (unsigned k = 1; k <= depth; ++k) {
    Rational ak = sequence_a(k);
    Rational w = sequence_a(k + 1) - ak;
    left.push_back(ak);
    for (unsigned j = 0; j <= grid; ++j) left.push_back(ak + w * pow2(-static_cast<int>(j)));
  }
  std::sort(left.begin(), left.end());
  left.erase(std::unique(left.begin(), left.end()), left.end());
  std::vector<Rational> nodes = left;
  nodes.push_back(Rational(1, 2));
  for (auto it = left.rbegin(); it != left.rend(); ++it) nodes.push_back(1 - *it);
  return nodes;
}

PolylineCurve build_counterexample(const CounterexampleParams& params) {
  params.validate();
  std::vector<Point> pts;
  for (const Rational& x : counterexample_nodes(params.depth, params.grid)) {
    pts.push_back({x, counterexample_value(x, params.lambda, params.depth)});
  }
  return PolylineCurve(std::move(pts), pow2(-static_cast<int>(kSnapBits)));
}

bool TriangleT::contains(const Point& p) const {
  // Closed triangle: same side (or on) of all three edges.
  auto orient = [](const Point& a, const Point& b, const Point& c) { return sgn(cross(b - a, c - a)); };
  int o1 = orient(start, end, p);
  int o2 = orient(end, corner, p);
  int o3 = orient(corner, start, p);
  bool has_neg = o1 < 0 || o2 < 0 || o3 < 0;
  bool has_pos = o1 > 0 || o2 > 0 || o3 > 0;
  return !(has_neg && has_pos);
}

TriangleT triangle_T(unsigned k, const Rational& lambda) {
  TriangleT t;
  t.k = k;
  t.start = {sequence_a(k), sequence_b(k, lambda)};
  t.end = {sequence_a(k + 1), sequence_b(k + 1, lambda)};
  t.corner = {sequence_a(k), sequence_b(k + 1, lambda)};
  return t;
}

TriangleCheck check_triangle_containment(const PolylineCurve& curve, unsigned k, const CounterexampleParams& params) {
  if (k == 0 || k >= params.depth + 1) throw PreconditionError("triangle index must satisfy 1 <= k <= depth");
  TriangleCheck out;
  out.triangle = triangle_T(k, params.lambda);
  Rational lo = sequence_a(k);
  Rational hi = sequence_a(k + 1);
  for (const Point& p : curve.points()) {
    if (p.x < lo || p.x > hi) continue;
    ++out.breakpoints_checked;
    if (!out.triangle.contains(p)) {
      out.holds = false;
      if (!out.violator) out.violator = p;
    }
  }
  return out;
}

Rational nonconsecutive_slope_bound(unsigned k, unsigned j, const Rational& lambda) {
  if (j <= 1) throw PreconditionError("non-consecutive triangles require j > 1");
  if (k == 0) throw DomainError("triangle index starts at 1");
  unsigned m = k + j;
  auto b = [&](unsigned i) { return sequence_b(i, lambda); };
  auto a = [](unsigned i) { return sequence_a(i); };
  Rational q1, q2;
  if ((k % 2) != (m % 2)) {
    q1 = (b(m) - b(k)) / (a(m) - a(k));
    q2 = (b(m + 1) - b(k + 1)) / (a(m) - a(k + 1));
  } else {
    q1 = (b(m + 1) - b(k)) / (a(m) - a(k));
    q2 = (b(m) - b(k + 1)) / (a(m) - a(k + 1));
  }
  return std::max(abs_value(q1), abs_value(q2));
}

Rational central_slope(unsigned k, const Rational& lambda) {
  Rational num = abs_value(sequence_b(k, lambda) - lambda / 6);
  Rational den = abs_value(sequence_a(k) - Rational(1, 2));
  return num / den;
}

}  // namespace conecurve
