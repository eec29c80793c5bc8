#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conecurve/curve.hpp"
#include "conecurve/geometry.hpp"

namespace conecurve {

// Truncated cone parameters (theta, rho, h) with tan(theta) rational, rho
// given by a rational rotation vector and h rational.
struct AvoidanceTriple {
  Rational tan_theta;
  Rotation rho;
  Rational h;

  static AvoidanceTriple make(Rational tan_theta, Rational tan_rho, Rational h);
  PlanarCone cone_at(const Point& p) const;
  // cos(theta)^2 = 1 / (1 + tan^2).
  Rational cos_sq() const { return 1 / (1 + tan_theta * tan_theta); }
  std::string str() const;
};

// True iff the truncated cone at p meets the curve only in p. Throws
// NotOnCurve when p is not on the curve.
bool gamma_n_contains(const PolylineCurve& curve, const Point& p, const AvoidanceTriple& triple);

// Affine per-axis map into [0,1]^2: x' = (x - x0) / w, y' = (y - y0) / hgt.
struct TransformRecord {
  Rational x0, y0, w, hgt;

  Point forward(const Point& p) const { return {(p.x - x0) / w, (p.y - y0) / hgt}; }
  Point back(const Point& p) const { return {p.x * w + x0, p.y * hgt + y0}; }
  // tan(phi) of a vertical cone after the map.
  Rational map_tan_phi(const Rational& t) const { return t * w / hgt; }
  bool identity() const { return x0 == 0 && y0 == 0 && w == 1 && hgt == 1; }
};

struct Normalized {
  PolylineCurve curve;
  TransformRecord transform;
};

Normalized normalize_to_unit_square(const PolylineCurve& curve);

// Angle-preserving frame used by the cover: rotate by -rho, then scale
// uniformly so the longer bounding-box side has length 1.
struct CoverFrame {
  Rotation rho;
  Point offset;   // subtracted after rotation
  Rational span;  // rotated bounding-box max side (divisor)

  Point forward(const Point& p) const;
  // Squared scale factor from original to frame lengths.
  Rational scale_sq() const { return rho.norm_sq() / (span * span); }
};

CoverFrame cover_frame(const PolylineCurve& curve, const Rotation& rho);

struct CoverBall {
  std::size_t strip = 0;
  Point center;  // frame coordinates
};

struct StripInfo {
  std::size_t index = 0;
  std::size_t candidates = 0;       // gamma_n points examined in the strip
  std::size_t components = 0;       // components of the curve inside the strip
  std::vector<Point> centers;       // P_j, frame coordinates
  bool count_bound_ok = true;       // |P_j| <= min(2k, ceil(1 / (sin(theta) h)))
};

struct CoverReport {
  AvoidanceTriple triple;
  std::size_t k = 0;
  std::size_t N = 0;
  Rational h_frame_sq;                 // h^2 in frame units
  std::vector<StripInfo> strips_hit;   // strips meeting gamma_n, in order
  std::vector<CoverBall> balls;
  Rational radius_sq;                  // (1 / (N cos theta))^2
  // total radius = total_radius_sec * sec(theta); bound = 2k sec(theta)
  Rational total_radius_sec;
  double total_radius = 0;
  double bound = 0;
  bool bound_ok = true;
  bool covers_gamma_n = true;          // every gamma_n candidate lies in a ball
  bool covers_components = true;       // every breakpoint of admitted components too
  bool per_strip_ok = true;
  std::size_t gamma_points = 0;
  std::vector<Point> uncovered;        // frame coordinates, when !covers_gamma_n

  bool valid() const { return bound_ok && covers_gamma_n && per_strip_ok; }
};

// Smallest N with 1/N < cos(theta) h in frame units.
std::size_t smallest_admissible_N(const PolylineCurve& curve, const AvoidanceTriple& triple);

// Throws PreconditionError when 1/N >= cos(theta) h (frame units).
CoverReport build_strip_cover(const PolylineCurve& curve, const AvoidanceTriple& triple, std::size_t k,
                              std::optional<std::size_t> N = std::nullopt);

// 2k / cos(theta).
Rational cover_bound(std::size_t k, const Rational& cos_theta);

struct TripleMembership {
  AvoidanceTriple triple;
  std::size_t members = 0;  // breakpoints in gamma_n
  std::optional<CoverReport> cover;
};

struct SigmaFiniteReport {
  std::vector<TripleMembership> entries;
  std::size_t assigned = 0;  // breakpoints in at least one gamma_n
  std::size_t total = 0;
  std::vector<std::size_t> never_assigned;  // breakpoint indices

  double coverage() const { return total == 0 ? 0.0 : static_cast<double>(assigned) / static_cast<double>(total); }
};

SigmaFiniteReport sigma_finite_decomposition(const PolylineCurve& curve, std::size_t k,
                                             const std::vector<AvoidanceTriple>& triples, bool build_covers = true);

// First `count` triples of a fixed enumeration of rational triples; the
// enumeration for n is a prefix of the one for n + 1.
std::vector<AvoidanceTriple> enumerate_rational_triples(std::size_t count);

// Calkin-Wilf enumeration of the positive rationals, starting at 1.
Rational calkin_wilf(std::size_t index);

struct H1Estimate {
  std::vector<double> scales;
  std::vector<double> sums;     // sum of diameters of the greedy cover
  std::vector<std::size_t> balls;
  bool nonincreasing = true;    // sums never grow as the scale shrinks
};

// Greedy arc-following cover with balls of the given radii, summed over all
// curves.
H1Estimate h1_upper_estimate(const std::vector<PolylineCurve>& curves, const std::vector<double>& scales);
H1Estimate h1_upper_estimate(const PolylineCurve& curve, const std::vector<double>& scales);

struct DimensionEstimate {
  std::vector<int> exponents;
  std::vector<std::size_t> counts;  // occupied cells of side 2^-e
  double slope = 0;
};

// Box counting after uniform normalization into the unit square.
DimensionEstimate box_dimension_estimate(const PolylineCurve& curve, const std::vector<int>& exponents);

}  // namespace conecurve
