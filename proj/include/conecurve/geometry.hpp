#pragma once

#include <compare>
#include <optional>
#include <string>

#include "conecurve/rational.hpp"

namespace conecurve {

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  // Lexicographic (x, then y).
  friend bool operator<(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }
inline Point operator-(const Point& p) { return {-p.x, -p.y}; }

inline Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline Rational norm_sq(const Point& a) { return dot(a, a); }
inline Rational dist_sq(const Point& a, const Point& b) { return norm_sq(a - b); }

// Left normal of a direction vector.
inline Point perp(const Point& d) { return {-d.y, d.x}; }

std::string to_string(const Point& p);
double distance(const Point& a, const Point& b);

// Slope of a line or of a pair of points: a rational or the vertical marker.
class Slope {
 public:
  static Slope vertical() { return Slope(); }
  static Slope of(Rational s) { return Slope(std::move(s)); }

  bool is_vertical() const { return !value_.has_value(); }
  const Rational& value() const { return *value_; }

  // Vertical compares greater than every finite slope.
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b);
  friend bool operator==(const Slope& a, const Slope& b) { return a.value_ == b.value_; }

  std::string str() const { return is_vertical() ? std::string("vertical") : to_string(*value_); }

 private:
  Slope() = default;
  explicit Slope(Rational s) : value_(std::move(s)) {}
  std::optional<Rational> value_;
};

// Where on a line or on a segment a point falls: the sign of the cross
// product between the line direction and (p - anchor).
enum class Side { right = -1, on = 0, left = 1 };

class Line {
 public:
  static Line through(const Point& p, const Point& q);
  static Line with_slope(const Point& anchor, Rational slope);
  static Line vertical(const Point& anchor);
  static Line with_direction(const Point& anchor, const Point& direction);

  const Point& anchor() const { return anchor_; }
  const Slope& slope() const { return slope_; }
  bool is_vertical() const { return slope_.is_vertical(); }

  // (1, s) or (0, 1).
  Point direction() const;

  // y-intercept, or the x-coordinate for vertical lines. Together with the
  // slope this identifies the line independently of its anchor.
  Rational offset() const;

  Rational orient(const Point& p) const { return cross(direction(), p - anchor_); }
  Side side(const Point& p) const;

  Line translated(const Point& v) const;

  friend bool operator==(const Line& a, const Line& b) { return a.slope_ == b.slope_ && a.offset() == b.offset(); }

  std::string str() const;

 private:
  Line(Point anchor, Slope slope) : anchor_(std::move(anchor)), slope_(std::move(slope)) {}
  Point anchor_;
  Slope slope_;
};

// Rotation represented by the (not necessarily unit) image of e_x. Applying it
// to a vector rotates by the encoded angle and scales by |(c, s)|; every
// predicate below is invariant under that positive scaling.
class Rotation {
 public:
  Rotation() : c_(1), s_(0) {}
  static Rotation from_vector(Rational c, Rational s);
  // Angle rho in (-pi/2, pi/2) given by tan(rho).
  static Rotation from_tangent(const Rational& tan_rho) { return from_vector(Rational(1), tan_rho); }
  // Unit rotation from the half-angle tangent u = tan(rho/2).
  static Rotation from_half_tangent(const Rational& u);

  const Rational& c() const { return c_; }
  const Rational& s() const { return s_; }
  Rational norm_sq() const { return c_ * c_ + s_ * s_; }
  bool is_identity_angle() const { return sgn(s_) == 0 && sgn(c_) > 0; }

  Point apply(const Point& v) const { return {c_ * v.x - s_ * v.y, s_ * v.x + c_ * v.y}; }
  // Transpose: rotates by the inverse angle (same scaling).
  Point apply_inverse(const Point& v) const { return {c_ * v.x + s_ * v.y, -s_ * v.x + c_ * v.y}; }

  double angle() const;

 private:
  Rotation(Rational c, Rational s) : c_(std::move(c)), s_(std::move(s)) {}
  Rational c_;
  Rational s_;
};

enum class Half { upper, lower };

// Closed double cone {w : |w'_y| >= tan(phi) |w'_x|}, w' = R^-1 (p - vertex),
// optionally truncated to the closed ball of radius h around the vertex.
// tan(phi) in (0, inf) encodes phi in (0, pi/2).
class PlanarCone {
 public:
  PlanarCone(Point vertex, Rational tan_phi, Rotation rotation = {}, std::optional<Rational> h = std::nullopt);

  // Same cone with the truncation given as a squared radius.
  static PlanarCone with_radius_sq(Point vertex, Rational tan_phi, Rotation rotation, Rational radius_sq);

  const Point& vertex() const { return vertex_; }
  const Rational& tan_phi() const { return tan_phi_; }
  const Rotation& rotation() const { return rotation_; }
  bool truncated() const { return radius_sq_.has_value(); }
  const std::optional<Rational>& radius_sq() const { return radius_sq_; }
  const std::optional<Rational>& h() const { return h_; }

  PlanarCone at(const Point& new_vertex) const;
  PlanarCone untruncated() const;

  // Direction of the cone's axis (the upper half points this way).
  Point axis() const { return rotation_.apply(Point{Rational(0), Rational(1)}); }
  // Boundary directions of the upper half: angle phi and pi - phi in the
  // cone's own frame.
  Point right_boundary() const { return rotation_.apply(Point{Rational(1), tan_phi_}); }
  Point left_boundary() const { return rotation_.apply(Point{Rational(-1), tan_phi_}); }

  // Sign of |y'| - tan(phi)|x'| for the direction w: > 0 strictly inside,
  // 0 on a boundary ray, < 0 strictly outside. Scale-free in w.
  int direction_class(const Point& w) const;
  bool contains_direction(const Point& w) const { return direction_class(w) >= 0; }

  double phi() const;

 private:
  Point vertex_;
  Rational tan_phi_;
  Rotation rotation_;
  std::optional<Rational> h_;
  std::optional<Rational> radius_sq_;
};

bool cone_contains(const PlanarCone& cone, const Point& p);
bool half_cone_contains(const PlanarCone& cone, Half half, const Point& p);
// Closure of the complement. Requires an untruncated cone.
bool dual_cone_contains(const PlanarCone& cone, const Point& p);
// Whether the line's direction lies in the cone (translated to the origin).
bool line_in_cone_directions(const Line& line, const PlanarCone& cone);
// Whether the direction stays admissible after an infinitesimal
// counter-clockwise (sense > 0) or clockwise (sense < 0) rotation.
bool direction_admissible_after_turn(const PlanarCone& cone, const Point& w, int sense);

// Difference quotient (q.y - p.y) / (q.x - p.x); symmetric in its arguments.
Slope slope_between(const Point& p, const Point& q);

}  // namespace conecurve
