// Python bindings. Exact values cross the boundary as "p/q" strings; results
// are the same JSON documents the CLI writes, returned as strings.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conecurve/errors.hpp"
#include "conecurve/report.hpp"

namespace py = pybind11;
using namespace conecurve;

namespace {

using PointText = std::pair<std::string, std::string>;

PolylineCurve curve_of(const std::vector<PointText>& pts) {
  std::vector<Point> v;
  v.reserve(pts.size());
  for (const auto& [x, y] : pts) v.push_back({parse_rational(x), parse_rational(y)});
  return PolylineCurve(std::move(v));
}

std::vector<PointText> points_of(const PolylineCurve& c) {
  std::vector<PointText> out;
  for (const Point& p : c.points()) out.emplace_back(to_string(p.x), to_string(p.y));
  return out;
}

OverlapPolicy policy_of(const std::string& s) {
  if (s == "chord") return OverlapPolicy::chord;
  if (s == "strict") return OverlapPolicy::strict;
  throw ParseError("overlap policy must be 'chord' or 'strict'");
}

std::string verify(const std::vector<PointText>& pts, const std::string& tan_phi, std::size_t k,
                   const std::string& tan_rho, const std::string& policy, unsigned workers) {
  auto c = curve_of(pts);
  auto v = check_admissible_k(c, parse_rational(tan_phi), Rotation::from_tangent(parse_rational(tan_rho)), k,
                              {policy_of(policy), workers});
  return to_json(v).dump();
}

std::string analyze(const std::vector<PointText>& pts, const std::string& tan_phi, const std::string& tan_rho,
                    const std::string& margin, const std::string& policy, unsigned workers) {
  auto c = curve_of(pts);
  auto r = verify_proposition(c, parse_rational(tan_phi), Rotation::from_tangent(parse_rational(tan_rho)),
                              parse_rational(margin), {policy_of(policy), workers});
  return to_json(r).dump();
}

std::string decompose(const std::vector<PointText>& pts, const std::string& lambda) {
  return to_json(detect_decomposition(curve_of(pts), parse_rational(lambda))).dump();
}

std::string lipschitz(const std::vector<PointText>& pts) { return to_json(lipschitz_constant(curve_of(pts))).dump(); }

std::vector<PointText> counterexample(const std::string& lambda, unsigned depth, unsigned grid) {
  return points_of(build_counterexample({parse_rational(lambda), depth, grid}));
}

std::vector<PointText> sample(const std::string& spec_json) {
  auto [spec, grid] = function_spec_from_json(Json::parse(spec_json));
  return points_of(sample_to_polyline(spec, grid));
}

std::string cover(const std::vector<PointText>& pts, std::size_t k, const std::string& tan_theta,
                  const std::string& tan_rho, const std::string& h, std::optional<std::size_t> N) {
  auto triple = AvoidanceTriple::make(parse_rational(tan_theta), parse_rational(tan_rho), parse_rational(h));
  return to_json(build_strip_cover(curve_of(pts), triple, k, N)).dump();
}

std::string find_cone(const std::vector<PointText>& pts, const PointText& P, const std::string& tan_phi0, std::size_t k,
                      const std::string& tan_rho, unsigned max_depth, const std::string& policy, unsigned workers) {
  ConeSearchOptions opt;
  opt.max_depth = max_depth;
  opt.rotation = Rotation::from_tangent(parse_rational(tan_rho));
  opt.workers = workers;
  opt.policy = policy_of(policy);
  Point p{parse_rational(P.first), parse_rational(P.second)};
  return to_json(find_avoiding_cone(curve_of(pts), p, parse_rational(tan_phi0), k, opt)).dump();
}

std::string box_dimension(const std::vector<PointText>& pts, const std::vector<int>& exponents) {
  return to_json(box_dimension_estimate(curve_of(pts), exponents)).dump();
}

}  // namespace

PYBIND11_MODULE(_conecurve, m) {
  m.doc() = "Exact cone-admissibility analysis of polyline curves";
  static py::exception<Error> error(m, "ConecurveError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.attr("schema_version") = kSchemaVersion;
  m.attr("version") = kToolVersion;
  m.def("verify", &verify, py::arg("points"), py::arg("tan_phi"), py::arg("k"), py::arg("tan_rho") = "0",
        py::arg("policy") = "chord", py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("analyze", &analyze, py::arg("points"), py::arg("tan_phi"), py::arg("tan_rho") = "0",
        py::arg("margin") = "1/20", py::arg("policy") = "chord", py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("decompose", &decompose, py::arg("points"), py::arg("lambda_"));
  m.def("lipschitz", &lipschitz, py::arg("points"));
  m.def("counterexample", &counterexample, py::arg("lambda_") = "1", py::arg("depth") = 6, py::arg("grid") = 32);
  m.def("sample", &sample, py::arg("spec_json"));
  m.def("sequence_b", [](unsigned k, const std::string& l) { return to_string(sequence_b(k, parse_rational(l))); },
        py::arg("k"), py::arg("lambda_") = "1");
  m.def("central_slope",
        [](unsigned k, const std::string& l) { return to_string(central_slope(k, parse_rational(l))); },
        py::arg("k"), py::arg("lambda_") = "1");
  m.def("cover", &cover, py::arg("points"), py::arg("k"), py::arg("tan_theta"), py::arg("tan_rho"), py::arg("h"),
        py::arg("N") = py::none(), py::call_guard<py::gil_scoped_release>());
  m.def("find_cone", &find_cone, py::arg("points"), py::arg("point"), py::arg("tan_phi0"), py::arg("k"),
        py::arg("tan_rho") = "0", py::arg("max_depth") = 8, py::arg("policy") = "chord", py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("box_dimension", &box_dimension, py::arg("points"), py::arg("exponents"),
        py::call_guard<py::gil_scoped_release>());
}
