#include "conecurve/geometry.hpp"

#include <cmath>

#include "conecurve/errors.hpp"

namespace conecurve {

std::string to_string(const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

double distance(const Point& a, const Point& b) {
  double dx = to_double(a.x - b.x);
  double dy = to_double(a.y - b.y);
  return std::hypot(dx, dy);
}

std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
  if (a.is_vertical() || b.is_vertical()) {
    return static_cast<int>(a.is_vertical()) <=> static_cast<int>(b.is_vertical());
  }
  int c = cmp(a.value(), b.value());
  return c <=> 0;
}

Line Line::through(const Point& p, const Point& q) {
  if (p == q) throw DegenerateInput("line through two identical points");
  return Line(p, slope_between(p, q));
}

Line Line::with_slope(const Point& anchor, Rational slope) { return Line(anchor, Slope::of(std::move(slope))); }

Line Line::vertical(const Point& anchor) { return Line(anchor, Slope::vertical()); }

Line Line::with_direction(const Point& anchor, const Point& direction) {
  if (sgn(direction.x) == 0 && sgn(direction.y) == 0) throw DegenerateInput("zero direction vector");
  if (sgn(direction.x) == 0) return vertical(anchor);
  return with_slope(anchor, Rational(direction.y / direction.x));
}

Point Line::direction() const {
  if (slope_.is_vertical()) return {Rational(0), Rational(1)};
  return {Rational(1), slope_.value()};
}

Rational Line::offset() const {
  if (slope_.is_vertical()) return anchor_.x;
  return anchor_.y - slope_.value() * anchor_.x;
}

Side Line::side(const Point& p) const { return static_cast<Side>(sgn(orient(p))); }

Line Line::translated(const Point& v) const { return Line(anchor_ + v, slope_); }

std::string Line::str() const {
  if (is_vertical()) return "x = " + to_string(anchor_.x);
  return "y = " + to_string(slope_.value()) + " x + " + to_string(offset());
}

Rotation Rotation::from_vector(Rational c, Rational s) {
  if (sgn(c) == 0 && sgn(s) == 0) throw DegenerateInput("zero rotation vector");
  return Rotation(std::move(c), std::move(s));
}

Rotation Rotation::from_half_tangent(const Rational& u) {
  Rational d = 1 + u * u;
  return Rotation(Rational((1 - u * u) / d), Rational(2 * u / d));
}

double Rotation::angle() const { return std::atan2(to_double(s_), to_double(c_)); }

PlanarCone::PlanarCone(Point vertex, Rational tan_phi, Rotation rotation, std::optional<Rational> h)
    : vertex_(std::move(vertex)), tan_phi_(std::move(tan_phi)), rotation_(std::move(rotation)), h_(std::move(h)) {
  if (sgn(tan_phi_) <= 0) throw DomainError("cone half-angle parameter must satisfy 0 < phi < pi/2");
  if (h_) {
    if (sgn(*h_) <= 0) throw DomainError("cone truncation radius must be positive");
    radius_sq_ = (*h_) * (*h_);
  }
}

PlanarCone PlanarCone::with_radius_sq(Point vertex, Rational tan_phi, Rotation rotation, Rational radius_sq) {
  if (sgn(radius_sq) <= 0) throw DomainError("cone truncation radius must be positive");
  PlanarCone cone(std::move(vertex), std::move(tan_phi), std::move(rotation));
  cone.radius_sq_ = std::move(radius_sq);
  return cone;
}

PlanarCone PlanarCone::at(const Point& new_vertex) const {
  PlanarCone c = *this;
  c.vertex_ = new_vertex;
  return c;
}

PlanarCone PlanarCone::untruncated() const {
  PlanarCone c = *this;
  c.h_.reset();
  c.radius_sq_.reset();
  return c;
}

int PlanarCone::direction_class(const Point& w) const {
  Point local = rotation_.apply_inverse(w);
  Rational ax = abs_value(local.x);
  Rational ay = abs_value(local.y);
  return sgn(ay - tan_phi_ * ax);
}

double PlanarCone::phi() const { return std::atan(to_double(tan_phi_)); }

bool cone_contains(const PlanarCone& cone, const Point& p) {
  Point w = p - cone.vertex();
  if (cone.radius_sq() && norm_sq(w) > *cone.radius_sq()) return false;
  return cone.direction_class(w) >= 0;
}

bool half_cone_contains(const PlanarCone& cone, Half half, const Point& p) {
  if (!cone_contains(cone, p)) return false;
  Point local = cone.rotation().apply_inverse(p - cone.vertex());
  return half == Half::upper ? sgn(local.y) >= 0 : sgn(local.y) <= 0;
}

bool dual_cone_contains(const PlanarCone& cone, const Point& p) {
  if (cone.truncated()) throw PreconditionError("dual cone is defined for untruncated cones only");
  return cone.direction_class(p - cone.vertex()) <= 0;
}

bool line_in_cone_directions(const Line& line, const PlanarCone& cone) {
  return cone.contains_direction(line.direction());
}

bool direction_admissible_after_turn(const PlanarCone& cone, const Point& w, int sense) {
  int cls = cone.direction_class(w);
  if (cls != 0) return cls > 0;
  Point n = perp(w);
  if (sense < 0) n = -n;
  Point lw = cone.rotation().apply_inverse(w);
  Point ln = cone.rotation().apply_inverse(n);
  // On a boundary ray both local components are nonzero.
  Rational deriv = sgn(lw.y) * ln.y - cone.tan_phi() * sgn(lw.x) * ln.x;
  return sgn(deriv) >= 0;
}

Slope slope_between(const Point& p, const Point& q) {
  if (p == q) throw DegenerateInput("slope between identical points");
  if (p.x == q.x) return Slope::vertical();
  return Slope::of(Rational((q.y - p.y) / (q.x - p.x)));
}

}  // namespace conecurve
