// conecurve command-line front end.
//
// Exit codes: 0 verdict ok / cone found, 2 hypothesis violated or certificate
// failed, 3 cone search exhausted, 1 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "conecurve/cone_finder.hpp"
#include "conecurve/counterexample.hpp"
#include "conecurve/cover.hpp"
#include "conecurve/curve.hpp"
#include "conecurve/errors.hpp"
#include "conecurve/intersection.hpp"
#include "conecurve/report.hpp"
#include "conecurve/structure.hpp"

using namespace conecurve;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;
constexpr int kExitExhausted = 3;

struct Common {
  std::string curve_path;
  std::string function_path;
  std::string out_path;
  std::string svg_path;
  std::string overlap = "chord";
  unsigned workers = 1;
  bool approx = false;
};

// Parses exact parameters and records every one in the config echo.
class Params {
 public:
  explicit Params(const Common& c) : approx_(c.approx) {}

  Rational get(const std::string& name, const std::string& text) {
    bool snapped = false;
    Rational r = approx_ ? parse_rational_approx(text, &snapped) : parse_rational(text);
    if (snapped) snapped_.push_back(name);
    echo_[name] = to_string(r);
    return r;
  }

  Point point(const std::string& name, const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("point '" + text + "' must be written x,y");
    Point p{get(name + ".x", text.substr(0, comma)), get(name + ".y", text.substr(comma + 1))};
    echo_.erase(name + ".x");
    echo_.erase(name + ".y");
    echo_[name] = {to_string(p.x), to_string(p.y)};
    return p;
  }

  Json& echo() { return echo_; }

  Json finish(const Common& c) {
    echo_["approx"] = approx_;
    if (approx_) {
      echo_["snapped"] = snapped_;
      echo_["snap_radius"] = "2^-" + std::to_string(kSnapBits);
    }
    if (!c.curve_path.empty()) echo_["curve"] = c.curve_path;
    if (!c.function_path.empty()) echo_["function"] = c.function_path;
    return echo_;
  }

 private:
  bool approx_;
  std::vector<std::string> snapped_;
  Json echo_ = Json::object();
};

OverlapPolicy parse_policy(const std::string& s) {
  if (s == "strict") return OverlapPolicy::strict;
  if (s == "chord") return OverlapPolicy::chord;
  throw ParseError("--overlap must be strict or chord");
}

PolylineCurve load_input(const Common& c, Params& params) {
  if (!c.curve_path.empty() && !c.function_path.empty()) throw ParseError("give either --curve or --function");
  if (!c.curve_path.empty()) return load_curve_csv(c.curve_path);
  if (c.function_path.empty()) throw ParseError("an input curve is required (--curve FILE or --function FILE)");
  std::ifstream in(c.function_path);
  if (!in) throw ParseError("cannot open " + c.function_path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("function spec: ") + e.what());
  }
  auto [spec, grid] = function_spec_from_json(j, c.approx);
  params.echo()["function_spec"] = to_json(spec, grid);
  return sample_to_polyline(spec, grid);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

void emit(const Common& c, const std::string& command, Params& params, Json result) {
  std::string text = envelope(command, params.finish(c), std::move(result)).dump(2) + "\n";
  if (c.out_path.empty()) std::cout << text;
  else write_text(c.out_path, text);
}

void add_common(CLI::App* sub, Common& c, bool input = true) {
  if (input) {
    sub->add_option("--curve", c.curve_path, "curve CSV (header x,y)");
    sub->add_option("--function", c.function_path, "FunctionSpec JSON {kind, params, domain, grid}");
  }
  sub->add_option("--out", c.out_path, "JSON report path (stdout when omitted)");
  sub->add_option("--svg", c.svg_path, "SVG figure path");
  sub->add_flag("--approx", c.approx, "accept floating-point parameters, snapped to 2^-64");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cone-hypothesis curve analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;
  int exit_code = kExitOk;

  // option storage shared by the subcommands
  std::string phi, rho = "0", theta, h, lambda = "1", margin = "1/20", point, phi0;
  std::size_t k = 2;
  std::optional<std::size_t> n_strips;
  unsigned depth = 6, grid = 32, max_depth = 8;
  int min_exp = 3, max_exp = 10;
  std::vector<std::string> h1_scales;
  std::string report_path;

  auto* verify = app.add_subcommand("verify", "exact maximum of admissible-line intersections");
  add_common(verify, common);
  verify->add_option("--phi", phi, "tan(phi) of the cone")->required();
  verify->add_option("--rho", rho, "tan(rho) of the cone rotation");
  verify->add_option("--k", k, "intersection bound")->required();
  verify->add_option("--overlap", common.overlap, "strict or chord")->check(CLI::IsMember({"strict", "chord"}));
  verify->add_option("--workers", common.workers, "worker threads");
  verify->callback([&] {
    Params ps(common);
    Rational t = ps.get("phi", phi);
    Rational r = ps.get("rho", rho);
    ps.echo()["k"] = k;
    ps.echo()["overlap"] = common.overlap;
    PolylineCurve curve = load_input(common, ps);
    Rotation rot = Rotation::from_tangent(r);
    SearchOptions opt{parse_policy(common.overlap), common.workers};
    AdmissibilityVerdict v = check_admissible_k(curve, t, rot, k, opt);
    emit(common, "verify", ps, to_json(v));
    if (!common.svg_path.empty()) write_text(common.svg_path, svg_verify(curve, v, PlanarCone({0, 0}, t, rot)));
    exit_code = v.ok ? kExitOk : kExitViolation;
  });

  auto* analyze = app.add_subcommand("analyze", "convex / Lipschitz / concave decomposition (k = 2)");
  add_common(analyze, common);
  analyze->add_option("--phi", phi, "tan(phi) of the cone")->required();
  analyze->add_option("--rho", rho, "tan(rho) of the cone rotation");
  analyze->add_option("--margin", margin, "inset for the compact-subinterval check");
  analyze->add_option("--overlap", common.overlap, "strict or chord")->check(CLI::IsMember({"strict", "chord"}));
  analyze->add_option("--workers", common.workers, "worker threads");
  analyze->callback([&] {
    Params ps(common);
    Rational t = ps.get("phi", phi);
    Rational r = ps.get("rho", rho);
    Rational m = ps.get("margin", margin);
    ps.echo()["overlap"] = common.overlap;
    PolylineCurve curve = load_input(common, ps);
    SearchOptions opt{parse_policy(common.overlap), common.workers};
    PropositionReport rep = verify_proposition(curve, t, Rotation::from_tangent(r), m, opt);
    emit(common, "analyze", ps, to_json(rep));
    if (!common.svg_path.empty()) {
      write_text(common.svg_path,
                 rep.decomposition ? svg_decomposition(curve, *rep.decomposition) : svg_curve(curve));
    }
    bool violated = !rep.hypothesis.ok || (rep.proposition_applies && !rep.conclusion_verified);
    exit_code = violated ? kExitViolation : kExitOk;
  });

  auto* cex = app.add_subcommand("counterexample", "build the non-Lipschitz counterexample curve");
  cex->add_option("--lambda", lambda, "slope scale lambda");
  cex->add_option("--depth", depth, "pieces per side");
  cex->add_option("--grid", grid, "graded refinement levels per piece");
  cex->add_option("--out", common.out_path, "curve CSV path")->required();
  cex->add_option("--svg", common.svg_path, "SVG figure path");
  cex->add_option("--report", report_path, "JSON summary path");
  cex->add_flag("--approx", common.approx, "accept floating-point parameters, snapped to 2^-64");
  cex->callback([&] {
    Params ps(common);
    CounterexampleParams cp{ps.get("lambda", lambda), depth, grid};
    ps.echo()["depth"] = depth;
    ps.echo()["grid"] = grid;
    cp.validate();
    PolylineCurve curve = build_counterexample(cp);
    save_curve_csv(common.out_path, curve);
    if (!common.svg_path.empty()) write_text(common.svg_path, svg_counterexample(curve, cp));
    Json tri = Json::array();
    bool all = true;
    for (unsigned i = 1; i <= depth; ++i) {
      TriangleCheck tc = check_triangle_containment(curve, i, cp);
      all = all && tc.holds;
      tri.push_back(to_json(tc));
    }
    Json seq = Json::array();
    for (unsigned i = 1; i <= depth + 1; ++i) seq.push_back({{"k", i}, {"a", to_string(sequence_a(i))},
                                                            {"b", to_string(sequence_b(i, cp.lambda))}});
    Json res{{"breakpoints", curve.size()},
             {"model_error", to_string(curve.model_error())},
             {"arc_length", arc_length(curve)},
             {"triangles", tri},
             {"triangles_hold", all},
             {"sequence", seq},
             {"central_slope", to_string(central_slope(depth, cp.lambda))}};
    std::string text = envelope("counterexample", ps.finish(common), res).dump(2) + "\n";
    if (!report_path.empty()) write_text(report_path, text);
    exit_code = all ? kExitOk : kExitViolation;
  });

  auto* cover = app.add_subcommand("cover", "strip cover of gamma_n for one rational triple");
  cover->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  add_common(cover, common);
  cover->add_option("--k", k, "intersection bound")->required();
  cover->add_option("--theta", theta, "tan(theta)")->required();
  cover->add_option("--rho", rho, "tan(rho)");
  cover->add_option("--h", h, "truncation radius")->required();
  cover->add_option("--N", n_strips, "number of strips (smallest admissible when omitted)");
  cover->callback([&] {
    Params ps(common);
    AvoidanceTriple tr = AvoidanceTriple::make(ps.get("theta", theta), ps.get("rho", rho), ps.get("h", h));
    ps.echo()["k"] = k;
    if (n_strips) ps.echo()["N"] = *n_strips;
    PolylineCurve curve = load_input(common, ps);
    CoverReport rep = build_strip_cover(curve, tr, k, n_strips);
    emit(common, "cover", ps, to_json(rep));
    if (!common.svg_path.empty()) write_text(common.svg_path, svg_cover(curve, rep));
    exit_code = rep.valid() ? kExitOk : kExitViolation;
  });

  auto* find = app.add_subcommand("findcone", "search for a truncated cone meeting the curve only at a point");
  add_common(find, common);
  find->add_option("--point", point, "vertex x,y on the curve")->required();
  find->add_option("--phi0", phi0, "tan(phi0) of the initial cone")->required();
  find->add_option("--rho", rho, "tan(rho) of the initial cone rotation");
  find->add_option("--k", k, "intersection bound")->required();
  find->add_option("--max-depth", max_depth, "deepest bisection level");
  find->add_option("--overlap", common.overlap, "strict or chord")->check(CLI::IsMember({"strict", "chord"}));
  find->add_option("--workers", common.workers, "worker threads");
  find->callback([&] {
    Params ps(common);
    Point P = ps.point("point", point);
    Rational t = ps.get("phi0", phi0);
    Rational r = ps.get("rho", rho);
    ps.echo()["k"] = k;
    ps.echo()["max_depth"] = max_depth;
    ps.echo()["overlap"] = common.overlap;
    PolylineCurve curve = load_input(common, ps);
    ConeSearchOptions opt;
    opt.max_depth = max_depth;
    opt.rotation = Rotation::from_tangent(r);
    opt.workers = common.workers;
    opt.policy = parse_policy(common.overlap);
    ConeSearchResult res = find_avoiding_cone(curve, P, t, k, opt);
    emit(common, "findcone", ps, to_json(res));
    if (!common.svg_path.empty()) write_text(common.svg_path, svg_findcone(curve, P, res));
    exit_code = res.outcome == SearchOutcome::found       ? kExitOk
                : res.outcome == SearchOutcome::violation ? kExitViolation
                                                          : kExitExhausted;
  });

  auto* dim = app.add_subcommand("dimension", "box-counting dimension and H1 upper estimates");
  add_common(dim, common);
  dim->add_option("--min-exp", min_exp, "coarsest box side 2^-min");
  dim->add_option("--max-exp", max_exp, "finest box side 2^-max");
  dim->add_option("--h1-scales", h1_scales, "ball radii for the H1 estimate, decreasing");
  dim->callback([&] {
    Params ps(common);
    if (min_exp < 0 || max_exp <= min_exp) throw ParseError("need 0 <= --min-exp < --max-exp");
    ps.echo()["min_exp"] = min_exp;
    ps.echo()["max_exp"] = max_exp;
    std::vector<double> scales;
    for (std::size_t i = 0; i < h1_scales.size(); ++i) scales.push_back(to_double(ps.get("h1_scale_" + std::to_string(i), h1_scales[i])));
    PolylineCurve curve = load_input(common, ps);
    std::vector<int> exps;
    for (int e = min_exp; e <= max_exp; ++e) exps.push_back(e);
    Json res{{"box", to_json(box_dimension_estimate(curve, exps))}, {"arc_length", arc_length(curve)}};
    if (!scales.empty()) res["h1"] = to_json(h1_upper_estimate(curve, scales));
    emit(common, "dimension", ps, res);
    if (!common.svg_path.empty()) write_text(common.svg_path, svg_curve(curve));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  } catch (const conecurve::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
  return exit_code;
}
