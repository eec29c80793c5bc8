#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "conecurve/geometry.hpp"

namespace conecurve {

// Continuous piecewise-linear curve through an ordered list of breakpoints.
class PolylineCurve {
 public:
  // `model_error` bounds the absolute distance between each breakpoint and
  // the analytic curve it samples (zero for exact curves).
  explicit PolylineCurve(std::vector<Point> breakpoints, Rational model_error = Rational(0));

  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }
  std::size_t segment_count() const { return points_.size() - 1; }

  // x strictly increasing.
  bool is_function_graph() const { return function_graph_; }
  // x non-decreasing (vertical segments allowed).
  bool is_x_monotone() const { return x_monotone_; }

  const Rational& model_error() const { return model_error_; }

  const Rational& x_min() const { return x_min_; }
  const Rational& x_max() const { return x_max_; }
  const Rational& y_min() const { return y_min_; }
  const Rational& y_max() const { return y_max_; }

  // Whether p lies on some closed segment (exact).
  bool contains(const Point& p) const;

  void require_function_graph() const;

  friend bool operator==(const PolylineCurve& a, const PolylineCurve& b) { return a.points_ == b.points_; }

 private:
  std::vector<Point> points_;
  Rational model_error_;
  bool function_graph_ = true;
  bool x_monotone_ = true;
  Rational x_min_, x_max_, y_min_, y_max_;
};

bool point_on_segment(const Point& p, const Point& a, const Point& b);

struct GridSpec {
  std::size_t uniform_nodes = 0;  // evenly spaced nodes including both ends
  unsigned graded_levels = 0;     // geometric refinement toward singular points
};

// Analytic function on a closed interval that can be evaluated exactly or
// with a certified snapping error below 2^-kSnapBits.
class FunctionSpec {
 public:
  enum class Kind { cube_root, square_root, polynomial, counterexample, affine, table };

  static FunctionSpec cube_root(Rational lo, Rational hi);
  static FunctionSpec square_root(Rational lo, Rational hi);
  // coeffs[i] multiplies x^i.
  static FunctionSpec polynomial(std::vector<Rational> coeffs, Rational lo, Rational hi);
  // f(x) = slope * x + intercept.
  static FunctionSpec affine(Rational slope, Rational intercept, Rational lo, Rational hi);
  // Truncated counterexample with `depth` pieces per side on [0, 1].
  static FunctionSpec counterexample(Rational lambda, unsigned depth);
  // Piecewise-linear interpolation of a table with increasing x.
  static FunctionSpec table(std::vector<Point> nodes);

  Kind kind() const { return kind_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& lambda() const { return lambda_; }
  unsigned depth() const { return depth_; }
  const std::vector<Point>& table_nodes() const { return table_; }

  // True when every value is an exact rational (no snapping).
  bool exact() const;
  bool monotone_hint() const;

  // Throws DomainError outside [lo, hi].
  Rational evaluate(const Rational& x) const;

  // Grid nodes: uniform nodes united with the kind's graded nodes, sorted.
  std::vector<Rational> nodes(const GridSpec& grid) const;

  std::string kind_name() const;

 private:
  FunctionSpec() = default;
  Kind kind_ = Kind::affine;
  Rational lo_, hi_;
  std::vector<Rational> coeffs_;
  Rational lambda_;
  unsigned depth_ = 0;
  std::vector<Point> table_;
};

PolylineCurve sample_to_polyline(const FunctionSpec& spec, const GridSpec& grid);
PolylineCurve polyline_from_nodes(const FunctionSpec& spec, std::vector<Rational> xs);

double arc_length(const PolylineCurve& curve);

// Exact restriction of a function graph to [lo, hi] with interpolated ends.
PolylineCurve restrict_x(const PolylineCurve& curve, const Rational& lo, const Rational& hi);

// Value of a function-graph polyline at x (linear interpolation).
Rational interpolate_y(const PolylineCurve& curve, const Rational& x);

// CSV with header "x,y"; coordinates as decimals or p/q.
PolylineCurve read_curve_csv(std::istream& in);
PolylineCurve load_curve_csv(const std::string& path);
void write_curve_csv(std::ostream& out, const PolylineCurve& curve);
void save_curve_csv(const std::string& path, const PolylineCurve& curve);

}  // namespace conecurve
