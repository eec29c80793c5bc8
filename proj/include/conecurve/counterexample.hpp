#pragma once

#include <optional>
#include <vector>

#include "conecurve/curve.hpp"

namespace conecurve {

// The function is built from pieces f_k on [a_k, a_{k+1}], a_k = 1/2 - 2^-k,
// with f_k(a_k) = b_k and a square-root profile that has a vertical tangent
// at a_k. The right half is the mirror image around x = 1/2.
struct CounterexampleParams {
  Rational lambda = 1;
  unsigned depth = 6;  // pieces kept on each side (>= 2)
  unsigned grid = 32;  // graded refinement levels per piece (>= 2)

  void validate() const;
};

Rational sequence_a(unsigned k);
// Closed form (lambda / 6) (1 - (-1/2)^(k-1)).
Rational sequence_b(unsigned k, const Rational& lambda);
// b_1 = 0, b_2 = lambda / 4, b_{k+1} = (b_k + b_{k-1}) / 2.
Rational sequence_b_recursive(unsigned k, const Rational& lambda);

// f_k(x) for a_k <= x <= a_{k+1}, with absolute error < 2^-bits. The
// endpoint values b_k and b_{k+1} are returned exactly.
Rational piece_value(unsigned k, const Rational& x, const Rational& lambda, unsigned bits = kSnapBits);

// Value of the depth-truncated model on [0, 1]: pieces up to `depth`, then
// straight segments through (1/2, lambda / 6).
Rational counterexample_value(const Rational& x, const Rational& lambda, unsigned depth);

std::vector<Rational> counterexample_nodes(unsigned depth, unsigned grid);

PolylineCurve build_counterexample(const CounterexampleParams& params);

// Right triangle with vertices (a_k, b_k), (a_{k+1}, b_{k+1}), (a_k, b_{k+1}).
struct TriangleT {
  unsigned k = 0;
  Point start;   // (a_k, b_k)
  Point end;     // (a_{k+1}, b_{k+1})
  Point corner;  // (a_k, b_{k+1})

  bool contains(const Point& p) const;
  Rational width() const { return end.x - start.x; }
  Rational height() const { return abs_value(end.y - start.y); }
};

TriangleT triangle_T(unsigned k, const Rational& lambda);

struct TriangleCheck {
  TriangleT triangle;
  bool holds = true;
  std::size_t breakpoints_checked = 0;
  std::optional<Point> violator;
};

// Verifies that every breakpoint of the f_k piece of `curve` (built with
// `params`) lies in the closed triangle T_k.
TriangleCheck check_triangle_containment(const PolylineCurve& curve, unsigned k, const CounterexampleParams& params);

// Largest absolute value among the extremal slopes between T_k and T_{k+j}.
// Requires j > 1.
Rational nonconsecutive_slope_bound(unsigned k, unsigned j, const Rational& lambda);

// |b_k - lambda/6| / |a_k - 1/2|.
Rational central_slope(unsigned k, const Rational& lambda);

}  // namespace conecurve
