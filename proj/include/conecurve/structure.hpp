#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "conecurve/curve.hpp"
#include "conecurve/intersection.hpp"

namespace conecurve {

struct LipschitzProfile {
  Rational lo, hi;
  std::optional<Rational> constant;  // empty means infinite
  std::size_t segment = 0;           // attaining segment of the restricted curve
  Point seg_start, seg_end;

  bool finite() const { return constant.has_value(); }
};

// Maximum absolute segment slope of the restriction to [lo, hi].
LipschitzProfile lipschitz_constant(const PolylineCurve& curve, const Rational& lo, const Rational& hi);
LipschitzProfile lipschitz_constant(const PolylineCurve& curve);

struct SlopeExtremes {
  Rational min_slope, max_slope;
  std::size_t min_i = 0, min_j = 1;  // breakpoint indices attaining them
  std::size_t max_i = 0, max_j = 1;
};

// Extremes of the difference quotient over breakpoint pairs. A chord slope is
// a weighted mean of the segment slopes it spans, so segments attain both.
SlopeExtremes slope_extremes(const PolylineCurve& curve);

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

struct MonotoneCheck {
  Verdict verdict = Verdict::not_applicable;
  std::size_t local_minima = 0;
  std::optional<Rational> min_x;
  std::optional<std::pair<std::size_t, std::size_t>> violation;  // breakpoints breaking strictness
};

// Monotonicity check: a unique local minimum with strict decrease before it
// and strict increase after it.
MonotoneCheck unique_local_min_monotone(const PolylineCurve& curve);

enum class Orientation { convex, concave };
std::string to_string(Orientation o);

struct ConvexityCheck {
  bool holds = true;
  std::optional<std::array<Point, 3>> witness;  // three consecutive breakpoints
  Rational tolerance_used;                      // largest slope slack applied
};

// Successive segment slopes nondecreasing (convex) or nonincreasing (concave)
// on [lo, hi]. Sampled curves get a slack of 2 e / dx per slope, with e the
// curve's model error.
ConvexityCheck is_convex_on(const PolylineCurve& curve, const Rational& lo, const Rational& hi, Orientation o);
ConvexityCheck is_convex_on(const PolylineCurve& curve, Orientation o);

enum class RegionClass { concave, convex, lipschitz };
std::string to_string(RegionClass c);

struct Region {
  Rational lo, hi;
  RegionClass cls = RegionClass::lipschitz;
  Rational constant;                 // max |slope| on the region
  std::size_t witness_i = 0, witness_j = 1;  // breakpoints attaining it (or the steep segment)
};

struct ConvexityDecomposition {
  bool ok = true;
  std::string failure;  // set when !ok
  Rational lambda_lo;   // negative bound, -lambda in the symmetric case
  Rational lambda_hi;   // positive bound
  std::optional<Rational> x_bar, y_bar;
  std::vector<Region> regions;

  // max(lambda_hi, -lambda_lo).
  Rational middle_constant() const { return lambda_hi > -lambda_lo ? lambda_hi : Rational(-lambda_lo); }
};

// Symmetric bounds (-lambda, lambda).
ConvexityDecomposition detect_decomposition(const PolylineCurve& curve, const Rational& lambda);

// Steep segments are those with slope >= hi or <= lo (lo < 0 < hi).
ConvexityDecomposition detect_decomposition(const PolylineCurve& curve, const Rational& lo, const Rational& hi);

struct PropositionReport {
  AdmissibilityVerdict hypothesis;
  bool proposition_applies = false;  // the cone contains the vertical direction
  std::string note;
  std::optional<ConvexityDecomposition> decomposition;
  LipschitzProfile whole;
  std::optional<LipschitzProfile> inset;  // on [x0 + margin, x1 - margin]
  std::vector<LipschitzProfile> region_constants;
  bool conclusion_verified = false;
};

PropositionReport verify_proposition(const PolylineCurve& curve, const Rational& tan_phi, const Rotation& rotation,
                                     const Rational& compact_margin, const SearchOptions& options = {});

}  // namespace conecurve
