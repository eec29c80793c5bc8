#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conecurve/curve.hpp"
#include "conecurve/geometry.hpp"

namespace conecurve {

// How a line that contains a whole segment is counted.
//  strict: the line meets the curve in infinitely many points.
//  chord:  the segment is read as a chord of the sampled analytic curve; only
//          its breakpoints count.
enum class OverlapPolicy { strict, chord };

struct IntersectionCount {
  std::size_t finite = 0;
  bool infinite = false;

  static IntersectionCount unbounded() { return {0, true}; }

  bool exceeds(std::size_t k) const { return infinite || finite > k; }
  std::string str() const { return infinite ? std::string("infinite") : std::to_string(finite); }

  friend bool operator==(const IntersectionCount& a, const IntersectionCount& b) {
    return a.infinite == b.infinite && (a.infinite || a.finite == b.finite);
  }
  friend std::strong_ordering operator<=>(const IntersectionCount& a, const IntersectionCount& b) {
    if (a.infinite || b.infinite) return static_cast<int>(a.infinite) <=> static_cast<int>(b.infinite);
    return a.finite <=> b.finite;
  }
};

struct IntersectionReport {
  std::vector<Point> points;  // distinct, ordered along the line direction
  bool overlap = false;       // the line contains a whole segment
  IntersectionCount count;    // infinite iff overlap

  // Count under the given overlap policy (chord counts the listed points).
  IntersectionCount count_under(OverlapPolicy policy) const;
};

// Exact set of intersection points between a line and a polyline.
IntersectionReport line_curve_intersections(const Line& line, const PolylineCurve& curve);

// True when distinct segments meet only at their shared breakpoint (a closed
// polyline may also return to its first point).
bool is_simple(const PolylineCurve& curve);
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

struct AdmissibilityVerdict {
  bool ok = true;
  std::size_t k = 0;
  IntersectionCount max_count;
  std::optional<Line> witness;                  // maximizer, set when !ok
  std::optional<IntersectionReport> witness_report;
  bool witness_on_boundary = false;             // witness slope is exactly +-tan(phi)
  bool overlap_seen = false;                    // some admissible line contains a segment
  OverlapPolicy policy = OverlapPolicy::strict;
  std::optional<std::string> resolution_caveat;  // set for sampled curves
  std::size_t candidates_evaluated = 0;
};

struct SearchOptions {
  OverlapPolicy policy = OverlapPolicy::strict;
  unsigned workers = 1;
};

// Finite family of admissible lines meeting every combinatorial class of
// admissible lines: lines through breakpoint pairs, generic representatives
// of the cells around each of them, and lines of the two extreme directions
// through (and between) every breakpoint.
std::vector<Line> enumerate_critical_lines(const PolylineCurve& curve, const PlanarCone& cone);

// Exact maximum of the intersection count over all lines whose direction lies
// in the cone (vertex and truncation are ignored).
AdmissibilityVerdict max_intersections_over_cone(const PolylineCurve& curve, const PlanarCone& cone, std::size_t k,
                                                 const SearchOptions& options = {});

AdmissibilityVerdict check_admissible_k(const PolylineCurve& curve, const Rational& tan_phi, const Rotation& rotation,
                                        std::size_t k, const SearchOptions& options = {});

// Reference implementation: exact evaluation of every line returned by
// enumerate_critical_lines. Used for non-simple curves and as a test oracle.
IntersectionCount max_over_critical_lines(const PolylineCurve& curve, const PlanarCone& cone, OverlapPolicy policy);

}  // namespace conecurve
