#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conecurve/cover.hpp"
#include "conecurve/curve.hpp"
#include "conecurve/intersection.hpp"

namespace conecurve {

// Closed double sector at a vertex: directions w with cross(right, w) >= 0
// and cross(w, left) >= 0 (upper half), or -w of that form (lower half).
struct Wedge {
  Point vertex;
  Point right;  // clockwise boundary of the upper half
  Point left;   // counter-clockwise boundary of the upper half

  static Wedge of(const PlanarCone& cone);
  // +1 upper, -1 lower, 0 outside. w must be nonzero.
  int half_of(const Point& w) const;
};

struct ClipPiece {
  std::size_t segment = 0;
  int half = 1;  // +1 upper, -1 lower
  Point from, to;

  bool degenerate() const { return from == to; }
};

struct Component {
  std::vector<ClipPiece> pieces;
  bool contains_vertex = false;
  std::size_t side_points = 0;   // distinct points on the boundary rays, vertex excluded
  Rational reach_sq_upper = 0;   // max squared distance from the vertex per half
  Rational reach_sq_lower = 0;
  bool path_upper = false;       // nondegenerate piece in the upper half
  bool path_lower = false;

  // The component is the vertex alone.
  bool trivial() const { return !path_upper && !path_lower; }
};

struct ComponentSet {
  std::vector<Component> components;  // ordered by first segment index
  std::optional<std::size_t> vertex_component;
  bool exceeds_bound = false;         // more than 2k + 1 components
};

// Connected components of (curve inside the closed untruncated double wedge).
ComponentSet components_in_wedge(const PolylineCurve& curve, const Wedge& wedge);

// Requires an untruncated cone whose vertex lies on the curve. With k set,
// flags more than 2k + 1 components.
ComponentSet connected_components_in_cone(const PolylineCurve& curve, const PlanarCone& cone,
                                          std::optional<std::size_t> k = std::nullopt);

// Sector i (0 = leftmost) of the 2^level fan splitting the cone of
// directions with tan(phi0) and the given rotation.
struct Sector {
  unsigned level = 0;
  std::size_t index = 0;
  Point right, left;         // exact rational boundary directions
  double angle_lo = 0;       // frame angles of the boundaries (radians)
  double angle_hi = 0;
};

std::vector<Sector> fan_sectors(const Rational& tan_phi0, const Rotation& rotation, unsigned level);

// phi_n = pi/4 + phi_{n-1}/2 and rho_{n,i} = (phi_n - phi) - i 2 (phi_n - phi) / (2^n - 1).
double bisection_phi(double phi0, unsigned level);
double bisection_rho(double phi0, unsigned level, std::size_t i);

struct SectorState {
  std::size_t index = 0;
  double angle_lo = 0, angle_hi = 0;
  std::size_t components = 0;
  bool avoided_untruncated = false;  // sector meets the curve only at P
  bool avoided_truncated = false;    // P is isolated in the sector
  bool boundary_contact = false;     // the P-component runs along a side
  bool path_upper = false, path_lower = false;
  Rational r_sq, d_sq, h_sq;         // squared r_{n,i}, d_{n,i}, h_{n,i}
};

struct SearchState {
  unsigned level = 0;
  double phi_n = 0;
  std::vector<double> rho;
  std::vector<Sector> sectors;
  std::vector<SectorState> states;
  Rational h_sq;       // min over sectors of r, d, h (squared)
  Rational cap_sq;     // squared cap h-bar
  double angle_error = 0;  // bound on the boundary angle approximation
  std::size_t upper_paths = 0, lower_paths = 0;
};

enum class SearchOutcome { found, violation, exhausted };
std::string to_string(SearchOutcome o);

struct ViolationWitness {
  Line line;
  IntersectionReport report;
  Rational epsilon;
  Half half = Half::upper;
  bool verified = false;
};

struct ConeSearchResult {
  SearchOutcome outcome = SearchOutcome::exhausted;
  std::optional<AvoidanceTriple> triple;
  unsigned level = 0;
  std::size_t sector = 0;
  std::optional<ViolationWitness> witness;
  std::vector<SearchState> trace;
  std::vector<std::string> diagnostics;
};

struct ConeSearchOptions {
  unsigned max_depth = 8;
  Rotation rotation;  // initial cone orientation (identity: vertical)
  unsigned workers = 1;
  OverlapPolicy policy = OverlapPolicy::chord;
};

// Throws NotOnCurve when P is not on the curve.
ConeSearchResult find_avoiding_cone(const PolylineCurve& curve, const Point& P, const Rational& tan_phi0,
                                    std::size_t k, const ConeSearchOptions& options = {});

// Evaluates one fan level (used by the search and by tests).
SearchState evaluate_level(const PolylineCurve& curve, const Point& P, const Rational& tan_phi0,
                           const Rotation& rotation, unsigned level, unsigned workers = 1);

// Side of the initial cone translated by epsilon along the axis (upper half)
// or against it (lower half). Requires 2^n >= 2k + 3 and k + 2 path-carrying
// sectors on one half. When epsilon is given it must satisfy
// 0 < epsilon < h_n sin(width of the rightmost sector).
ViolationWitness construct_violation_witness(const PolylineCurve& curve, const Point& P, const SearchState& state,
                                             std::size_t k, const Rational& tan_phi0, const Rotation& rotation,
                                             std::optional<Rational> epsilon = std::nullopt,
                                             OverlapPolicy policy = OverlapPolicy::chord);

// Rational symmetric cone inside the sector, truncated at h, re-verified to
// avoid the curve. Throws ZeroClearance when the sector itself meets the
// curve away from P within h.
AvoidanceTriple rationalize_triple(const Sector& sector, const Rational& h, const PolylineCurve& curve,
                                   const Point& P);
// Exact triples are returned unchanged after verification.
AvoidanceTriple rationalize_triple(const AvoidanceTriple& triple, const PolylineCurve& curve, const Point& P);

// k + 2 spokes from P in distinct level-n sectors of one half, and spokes in
// the remaining sectors pointing into the opposite half, drawn as a retraced
// star. Every sector up to level n carries part of the curve, and a side
// line translated slightly into the cone crosses the k + 2 spokes.
PolylineCurve spoke_violator(const Point& P, const Rational& tan_phi0, std::size_t k, const Rational& length,
                             const Rotation& rotation = {});

}  // namespace conecurve
