#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "conecurve/cone_finder.hpp"
#include "conecurve/counterexample.hpp"
#include "conecurve/cover.hpp"
#include "conecurve/curve.hpp"
#include "conecurve/intersection.hpp"
#include "conecurve/structure.hpp"

namespace conecurve {

using Json = nlohmann::json;  // std::map storage: keys serialize sorted

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "0.1.0";

// Rationals serialize as "p/q" strings.
Json to_json(const Rational& r);
Json to_json(const Point& p);
Json to_json(const Line& l);
Json to_json(const IntersectionCount& c);
Json to_json(const AdmissibilityVerdict& v);
Json to_json(const LipschitzProfile& p);
Json to_json(const ConvexityDecomposition& d);
Json to_json(const PropositionReport& r);
Json to_json(const AvoidanceTriple& t);
Json to_json(const CoverReport& r);
Json to_json(const SearchState& s);
Json to_json(const ConeSearchResult& r);
Json to_json(const DimensionEstimate& d);
Json to_json(const H1Estimate& h);
Json to_json(const TriangleCheck& t);

Json envelope(const std::string& command, Json config_echo, Json result);

// Accepts "p/q" or decimal strings and JSON integers. JSON floats and
// float strings only with `approx`, which snaps them (see parse_rational_approx)
// and sets *snapped.
Rational rational_from_json(const Json& j, bool approx = false, bool* snapped = nullptr);

// {kind, params, domain: [a, b], grid: {uniform, graded}}.
std::pair<FunctionSpec, GridSpec> function_spec_from_json(const Json& j, bool approx = false);
Json to_json(const FunctionSpec& spec, const GridSpec& grid);

struct SvgStyle {
  double width = 640;
  double height = 480;
  double margin = 24;
};

std::string svg_curve(const PolylineCurve& curve, const SvgStyle& style = {});
std::string svg_verify(const PolylineCurve& curve, const AdmissibilityVerdict& v, const PlanarCone& cone,
                       const SvgStyle& style = {});
std::string svg_counterexample(const PolylineCurve& curve, const CounterexampleParams& params,
                               const SvgStyle& style = {});
std::string svg_decomposition(const PolylineCurve& curve, const ConvexityDecomposition& d, const SvgStyle& style = {});
std::string svg_cover(const PolylineCurve& curve, const CoverReport& r, const SvgStyle& style = {});
std::string svg_findcone(const PolylineCurve& curve, const Point& P, const ConeSearchResult& r,
                         const SvgStyle& style = {});

}  // namespace conecurve
