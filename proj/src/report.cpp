#include "conecurve/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "conecurve/errors.hpp"

namespace conecurve {

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const Point& p) { return Json{{"x", to_string(p.x)}, {"y", to_string(p.y)}}; }

Json to_json(const Line& l) {
  Json j{{"anchor", to_json(l.anchor())}, {"offset", to_string(l.offset())}};
  if (l.is_vertical()) j["vertical"] = true;
  else j["slope"] = to_string(l.slope().value());
  return j;
}

Json to_json(const IntersectionCount& c) { return c.str(); }

namespace {

Json points_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const Point& p : pts) a.push_back(to_json(p));
  return a;
}

const char* policy_name(OverlapPolicy p) { return p == OverlapPolicy::strict ? "strict" : "chord"; }

}  // namespace

Json to_json(const AdmissibilityVerdict& v) {
  Json j{{"ok", v.ok},
         {"k", v.k},
         {"max_count", v.max_count.str()},
         {"candidates_evaluated", v.candidates_evaluated},
         {"overlap_seen", v.overlap_seen},
         {"policy", policy_name(v.policy)},
         {"witness_on_boundary", v.witness_on_boundary}};
  j["witness"] = v.witness ? to_json(*v.witness) : Json();
  if (v.witness_report) {
    j["witness_points"] = points_json(v.witness_report->points);
    j["witness_overlap"] = v.witness_report->overlap;
  }
  j["caveat"] = v.resolution_caveat ? Json(*v.resolution_caveat) : Json();
  return j;
}

Json to_json(const LipschitzProfile& p) {
  Json j{{"interval", {to_string(p.lo), to_string(p.hi)}}, {"finite", p.finite()}};
  j["constant"] = p.constant ? Json(to_string(*p.constant)) : Json("infinite");
  j["attained_on"] = {to_json(p.seg_start), to_json(p.seg_end)};
  return j;
}

Json to_json(const ConvexityDecomposition& d) {
  Json j{{"ok", d.ok}, {"lambda", {to_string(d.lambda_lo), to_string(d.lambda_hi)}}};
  if (!d.ok) j["failure"] = d.failure;
  j["x_bar"] = d.x_bar ? Json(to_string(*d.x_bar)) : Json();
  j["y_bar"] = d.y_bar ? Json(to_string(*d.y_bar)) : Json();
  Json regions = Json::array();
  Json constants = Json::array();
  for (const Region& r : d.regions) {
    regions.push_back({{"interval", {to_string(r.lo), to_string(r.hi)}},
                       {"class", to_string(r.cls)},
                       {"witness", {r.witness_i, r.witness_j}},
                       {"constant", to_string(r.constant)}});
    constants.push_back(to_string(r.constant));
  }
  j["regions"] = regions;
  j["constants"] = constants;
  if (d.ok) j["middle_constant"] = to_string(d.middle_constant());
  return j;
}

Json to_json(const PropositionReport& r) {
  Json j{{"hypothesis", to_json(r.hypothesis)},
         {"proposition_applies", r.proposition_applies},
         {"note", r.note},
         {"whole", to_json(r.whole)},
         {"conclusion_verified", r.conclusion_verified}};
  j["decomposition"] = r.decomposition ? to_json(*r.decomposition) : Json();
  j["inset"] = r.inset ? to_json(*r.inset) : Json();
  Json rc = Json::array();
  for (const auto& p : r.region_constants) rc.push_back(to_json(p));
  j["region_constants"] = rc;
  return j;
}

Json to_json(const AvoidanceTriple& t) {
  return Json{{"tan_theta", to_string(t.tan_theta)},
              {"rho", {to_string(t.rho.c()), to_string(t.rho.s())}},
              {"h", to_string(t.h)},
              {"theta", std::atan(to_double(t.tan_theta))},
              {"rho_angle", t.rho.angle()}};
}

Json to_json(const CoverReport& r) {
  Json strips = Json::array();
  for (const StripInfo& s : r.strips_hit) {
    strips.push_back({{"index", s.index},
                      {"candidates", s.candidates},
                      {"components", s.components},
                      {"centers", points_json(s.centers)},
                      {"count_bound_ok", s.count_bound_ok}});
  }
  Json balls = Json::array();
  for (const CoverBall& b : r.balls) balls.push_back({{"strip", b.strip}, {"center", to_json(b.center)}});
  return Json{{"triple", to_json(r.triple)},
              {"k", r.k},
              {"N", r.N},
              {"h_frame_sq", to_string(r.h_frame_sq)},
              {"strips_hit", strips},
              {"balls", balls},
              {"radius_sq", to_string(r.radius_sq)},
              {"total_radius_sec", to_string(r.total_radius_sec)},
              {"total_radius", r.total_radius},
              {"bound", r.bound},
              {"bound_ok", r.bound_ok},
              {"covers_gamma_n", r.covers_gamma_n},
              {"covers_components", r.covers_components},
              {"per_strip_ok", r.per_strip_ok},
              {"gamma_points", r.gamma_points},
              {"uncovered", points_json(r.uncovered)},
              {"valid", r.valid()}};
}

Json to_json(const SearchState& s) {
  Json sectors = Json::array();
  for (std::size_t i = 0; i < s.states.size(); ++i) {
    const SectorState& st = s.states[i];
    sectors.push_back({{"index", st.index},
                       {"angles", {st.angle_lo, st.angle_hi}},
                       {"rho", s.rho[i]},
                       {"components", st.components},
                       {"avoided_untruncated", st.avoided_untruncated},
                       {"avoided_truncated", st.avoided_truncated},
                       {"boundary_contact", st.boundary_contact},
                       {"path_upper", st.path_upper},
                       {"path_lower", st.path_lower},
                       {"r_sq", to_string(st.r_sq)},
                       {"d_sq", to_string(st.d_sq)},
                       {"h_sq", to_string(st.h_sq)}});
  }
  return Json{{"level", s.level},         {"phi_n", s.phi_n},
              {"h_sq", to_string(s.h_sq)}, {"cap_sq", to_string(s.cap_sq)},
              {"angle_error", s.angle_error}, {"upper_paths", s.upper_paths},
              {"lower_paths", s.lower_paths}, {"sectors", sectors}};
}

Json to_json(const ConeSearchResult& r) {
  Json j{{"outcome", to_string(r.outcome)}, {"level", r.level}, {"diagnostics", r.diagnostics}};
  j["triple"] = r.triple ? to_json(*r.triple) : Json();
  if (r.outcome == SearchOutcome::found) j["sector"] = r.sector;
  if (r.witness) {
    j["witness"] = {{"line", to_json(r.witness->line)},
                    {"epsilon", to_string(r.witness->epsilon)},
                    {"half", r.witness->half == Half::upper ? "upper" : "lower"},
                    {"points", points_json(r.witness->report.points)},
                    {"count", r.witness->report.count.str()},
                    {"verified", r.witness->verified}};
  } else {
    j["witness"] = Json();
  }
  Json trace = Json::array();
  for (const SearchState& s : r.trace) trace.push_back(to_json(s));
  j["trace"] = trace;
  return j;
}

Json to_json(const DimensionEstimate& d) {
  return Json{{"exponents", d.exponents}, {"counts", d.counts}, {"slope", d.slope}};
}

Json to_json(const H1Estimate& h) {
  return Json{{"scales", h.scales}, {"sums", h.sums}, {"balls", h.balls}, {"nonincreasing", h.nonincreasing}};
}

Json to_json(const TriangleCheck& t) {
  Json j{{"k", t.triangle.k},
         {"holds", t.holds},
         {"breakpoints_checked", t.breakpoints_checked},
         {"start", to_json(t.triangle.start)},
         {"end", to_json(t.triangle.end)},
         {"corner", to_json(t.triangle.corner)}};
  j["violator"] = t.violator ? to_json(*t.violator) : Json();
  return j;
}

Json envelope(const std::string& command, Json config_echo, Json result) {
  return Json{{"schema_version", kSchemaVersion},
              {"tool_version", kToolVersion},
              {"command", command},
              {"config_echo", std::move(config_echo)},
              {"result", std::move(result)}};
}

Rational rational_from_json(const Json& j, bool approx, bool* snapped) {
  if (snapped) *snapped = false;
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(Integer(std::to_string(j.get<unsigned long long>())))
                                  : Rational(Integer(std::to_string(j.get<long long>())));
  }
  if (j.is_number_float()) {
    if (!approx) throw ParseError("floating-point value " + j.dump() + " needs --approx");
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return parse_rational_approx(os.str(), snapped);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (approx) return parse_rational_approx(s, snapped);
    return parse_rational(s);
  }
  throw ParseError("expected a rational, got " + j.dump());
}

std::pair<FunctionSpec, GridSpec> function_spec_from_json(const Json& j, bool approx) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("function spec needs a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  const Json params = j.value("params", Json::object());
  auto rat = [&](const Json& v) { return rational_from_json(v, approx); };
  auto domain = [&]() -> std::pair<Rational, Rational> {
    if (!j.contains("domain") || !j.at("domain").is_array() || j.at("domain").size() != 2)
      throw ParseError("function spec needs 'domain': [a, b]");
    return {rat(j.at("domain")[0]), rat(j.at("domain")[1])};
  };
  GridSpec grid;
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    grid.uniform_nodes = g.value("uniform", std::size_t{0});
    grid.graded_levels = g.value("graded", 0u);
  }
  if (kind == "cube_root") {
    auto [a, b] = domain();
    return {FunctionSpec::cube_root(a, b), grid};
  }
  if (kind == "square_root") {
    auto [a, b] = domain();
    return {FunctionSpec::square_root(a, b), grid};
  }
  if (kind == "polynomial") {
    auto [a, b] = domain();
    std::vector<Rational> coeffs;
    for (const Json& c : params.at("coeffs")) coeffs.push_back(rat(c));
    return {FunctionSpec::polynomial(std::move(coeffs), a, b), grid};
  }
  if (kind == "affine") {
    auto [a, b] = domain();
    return {FunctionSpec::affine(rat(params.at("slope")), rat(params.value("intercept", Json(0))), a, b), grid};
  }
  if (kind == "counterexample") {
    return {FunctionSpec::counterexample(rat(params.value("lambda", Json(1))), params.value("depth", 6u)), grid};
  }
  if (kind == "table") {
    std::vector<Point> nodes;
    for (const Json& n : params.at("nodes")) nodes.push_back({rat(n.at(0)), rat(n.at(1))});
    return {FunctionSpec::table(std::move(nodes)), grid};
  }
  throw ParseError("unknown function kind '" + kind + "'");
}

Json to_json(const FunctionSpec& spec, const GridSpec& grid) {
  Json params = Json::object();
  switch (spec.kind()) {
    case FunctionSpec::Kind::polynomial:
    case FunctionSpec::Kind::affine: {
      Json c = Json::array();
      for (const Rational& r : spec.coeffs()) c.push_back(to_string(r));
      params["coeffs"] = c;
      break;
    }
    case FunctionSpec::Kind::counterexample:
      params["lambda"] = to_string(spec.lambda());
      params["depth"] = spec.depth();
      break;
    case FunctionSpec::Kind::table: {
      Json n = Json::array();
      for (const Point& p : spec.table_nodes()) n.push_back({to_string(p.x), to_string(p.y)});
      params["nodes"] = n;
      break;
    }
    default: break;
  }
  return Json{{"kind", spec.kind_name()},
              {"params", params},
              {"domain", {to_string(spec.lo()), to_string(spec.hi())}},
              {"grid", {{"uniform", grid.uniform_nodes}, {"graded", grid.graded_levels}}}};
}

// ---------------------------------------------------------------------------
// SVG

namespace {

struct Box {
  double x0, y0, x1, y1;
};

Box bounds(const std::vector<std::pair<double, double>>& pts) {
  Box b{pts[0].first, pts[0].second, pts[0].first, pts[0].second};
  for (auto [x, y] : pts) {
    b.x0 = std::min(b.x0, x);
    b.y0 = std::min(b.y0, y);
    b.x1 = std::max(b.x1, x);
    b.y1 = std::max(b.y1, y);
  }
  double w = b.x1 - b.x0, h = b.y1 - b.y0;
  double pad = 0.05 * std::max({w, h, 1e-9});
  return {b.x0 - pad, b.y0 - pad, b.x1 + pad, b.y1 + pad};
}

std::vector<std::pair<double, double>> to_doubles(const std::vector<Point>& pts) {
  std::vector<std::pair<double, double>> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.emplace_back(to_double(p.x), to_double(p.y));
  return out;
}

// World-to-page mapping with a uniform scale and y pointing up.
class Canvas {
 public:
  Canvas(const Box& box, const SvgStyle& st) : box_(box), st_(st) {
    double sx = (st.width - 2 * st.margin) / std::max(box.x1 - box.x0, 1e-12);
    double sy = (st.height - 2 * st.margin) / std::max(box.y1 - box.y0, 1e-12);
    scale_ = std::min(sx, sy);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.6f\" height=\"%.6f\" viewBox=\"0 0 %.6f "
                  "%.6f\">\n<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
                  st.width, st.height, st.width, st.height);
    out_ << buf;
  }

  const Box& box() const { return box_; }
  double scale() const { return scale_; }

  void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke, double w,
                const char* extra = "") {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(w) << "\" " << extra
         << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ << ' ';
      out_ << fmt(px(pts[i].first)) << ',' << fmt(py(pts[i].second));
    }
    out_ << "\"/>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& pts, const char* fill, double opacity) {
    out_ << "<polygon fill=\"" << fill << "\" fill-opacity=\"" << fmt(opacity) << "\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ << ' ';
      out_ << fmt(px(pts[i].first)) << ',' << fmt(py(pts[i].second));
    }
    out_ << "\"/>\n";
  }

  void segment(double x0, double y0, double x1, double y1, const char* stroke, double w, const char* extra = "") {
    out_ << "<line x1=\"" << fmt(px(x0)) << "\" y1=\"" << fmt(py(y0)) << "\" x2=\"" << fmt(px(x1)) << "\" y2=\""
         << fmt(py(y1)) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(w) << "\" " << extra << "/>\n";
  }

  void circle(double x, double y, double r_world, const char* fill, double opacity, const char* stroke = "none") {
    out_ << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"" << fmt(r_world * scale_)
         << "\" fill=\"" << fill << "\" fill-opacity=\"" << fmt(opacity) << "\" stroke=\"" << stroke << "\"/>\n";
  }

  void dot(double x, double y, const char* fill, double r_px = 3) {
    out_ << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"" << fmt(r_px) << "\" fill=\"" << fill
         << "\"/>\n";
  }

  void rect(double x0, double y0, double x1, double y1, const char* fill, double opacity) {
    out_ << "<rect x=\"" << fmt(px(x0)) << "\" y=\"" << fmt(py(y1)) << "\" width=\"" << fmt((x1 - x0) * scale_)
         << "\" height=\"" << fmt((y1 - y0) * scale_) << "\" fill=\"" << fill << "\" fill-opacity=\"" << fmt(opacity)
         << "\"/>\n";
  }

  void text(double x, double y, const std::string& s) {
    out_ << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(py(y)) << "\" font-size=\"11\" font-family=\"sans-serif\">"
         << s << "</text>\n";
  }

  // Infinite line through (x, y) with direction (dx, dy), clipped to the box.
  void line(double x, double y, double dx, double dy, const char* stroke, double w, const char* extra = "") {
    double t0 = -1e300, t1 = 1e300;
    auto clip = [&](double p, double d, double lo, double hi) {
      if (std::abs(d) < 1e-300) return p >= lo && p <= hi;
      double a = (lo - p) / d, b = (hi - p) / d;
      if (a > b) std::swap(a, b);
      t0 = std::max(t0, a);
      t1 = std::min(t1, b);
      return t0 <= t1;
    };
    if (!clip(x, dx, box_.x0, box_.x1) || !clip(y, dy, box_.y0, box_.y1)) return;
    segment(x + t0 * dx, y + t0 * dy, x + t1 * dx, y + t1 * dy, stroke, w, extra);
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

  static std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v == 0 ? 0.0 : v);
    return buf;
  }

 private:
  double px(double x) const { return st_.margin + (x - box_.x0) * scale_; }
  double py(double y) const { return st_.height - st_.margin - (y - box_.y0) * scale_; }

  Box box_;
  SvgStyle st_;
  double scale_ = 1;
  std::ostringstream out_;
};

std::pair<double, double> unit(const Point& d) {
  double x = to_double(d.x), y = to_double(d.y);
  double n = std::hypot(x, y);
  return {x / n, y / n};
}

// Both halves of a cone: filled wedges of the given radius.
void draw_wedge(Canvas& c, const Point& vertex, const Point& right, const Point& left, double radius, const char* fill,
                double opacity) {
  double vx = to_double(vertex.x), vy = to_double(vertex.y);
  auto [rx, ry] = unit(right);
  auto [lx, ly] = unit(left);
  double a0 = std::atan2(ry, rx), a1 = std::atan2(ly, lx);
  if (a1 < a0) a1 += 2 * M_PI;
  for (int s : {1, -1}) {
    std::vector<std::pair<double, double>> poly{{vx, vy}};
    for (int i = 0; i <= 24; ++i) {
      double a = a0 + (a1 - a0) * i / 24.0;
      poly.emplace_back(vx + s * radius * std::cos(a), vy + s * radius * std::sin(a));
    }
    c.polygon(poly, fill, opacity);
  }
}

}  // namespace

std::string svg_curve(const PolylineCurve& curve, const SvgStyle& style) {
  auto pts = to_doubles(curve.points());
  Canvas c(bounds(pts), style);
  c.polyline(pts, "black", 1.2);
  return c.finish();
}

std::string svg_verify(const PolylineCurve& curve, const AdmissibilityVerdict& v, const PlanarCone& cone,
                       const SvgStyle& style) {
  auto pts = to_doubles(curve.points());
  Canvas c(bounds(pts), style);
  c.polyline(pts, "black", 1.2);
  if (v.witness) {
    const Line& l = *v.witness;
    Point d = l.direction();
    c.line(to_double(l.anchor().x), to_double(l.anchor().y), to_double(d.x), to_double(d.y), "crimson", 1);
    if (v.witness_report) {
      for (const Point& p : v.witness_report->points) c.dot(to_double(p.x), to_double(p.y), "crimson");
      if (!v.witness_report->points.empty()) {
        Point at = v.witness_report->points.front();
        double r = 0.15 * (c.box().x1 - c.box().x0);
        draw_wedge(c, at, cone.right_boundary(), cone.left_boundary(), r, "steelblue", 0.25);
      }
    }
  } else {
    Point mid = curve[curve.size() / 2];
    double r = 0.15 * (c.box().x1 - c.box().x0);
    draw_wedge(c, mid, cone.right_boundary(), cone.left_boundary(), r, "steelblue", 0.25);
  }
  c.text(c.box().x0, c.box().y1, std::string("max count ") + v.max_count.str() + (v.ok ? " (ok)" : " (violated)"));
  return c.finish();
}

std::string svg_counterexample(const PolylineCurve& curve, const CounterexampleParams& params,
                               const SvgStyle& style) {
  auto pts = to_doubles(curve.points());
  Canvas c(bounds(pts), style);
  for (unsigned k = 1; k <= params.depth; ++k) {
    TriangleT t = triangle_T(k, params.lambda);
    std::vector<std::pair<double, double>> tri{{to_double(t.start.x), to_double(t.start.y)},
                                               {to_double(t.end.x), to_double(t.end.y)},
                                               {to_double(t.corner.x), to_double(t.corner.y)}};
    c.polygon(tri, "orange", 0.3);
    // mirror image on the right half
    for (auto& p : tri) p.first = 1 - p.first;
    c.polygon(tri, "orange", 0.3);
  }
  c.polyline(pts, "black", 1.0);
  Point mid{Rational(1, 2), params.lambda / 6};
  Rational t = params.lambda + Rational(1, 20);
  draw_wedge(c, mid, Point{1, t}, Point{-1, t}, 0.08, "steelblue", 0.3);
  return c.finish();
}

std::string svg_decomposition(const PolylineCurve& curve, const ConvexityDecomposition& d, const SvgStyle& style) {
  auto pts = to_doubles(curve.points());
  Canvas c(bounds(pts), style);
  for (const Region& r : d.regions) {
    const char* fill = r.cls == RegionClass::convex ? "seagreen" : r.cls == RegionClass::concave ? "orchid" : "gold";
    c.rect(to_double(r.lo), c.box().y0, to_double(r.hi), c.box().y1, fill, 0.15);
  }
  c.polyline(pts, "black", 1.2);
  for (const auto* v : {&d.x_bar, &d.y_bar}) {
    if (*v) c.line(to_double(**v), 0, 0, 1, "gray", 0.8, "stroke-dasharray=\"4 3\"");
  }
  return c.finish();
}

std::string svg_cover(const PolylineCurve& curve, const CoverReport& r, const SvgStyle& style) {
  CoverFrame frame = cover_frame(curve, r.triple.rho);
  std::vector<Point> fp;
  for (const Point& p : curve.points()) fp.push_back(frame.forward(p));
  auto pts = to_doubles(fp);
  auto all = pts;
  all.emplace_back(0, 0);
  all.emplace_back(1, 1);
  Canvas c(bounds(all), style);
  for (const StripInfo& s : r.strips_hit) {
    double lo = static_cast<double>(s.index) / static_cast<double>(r.N);
    double hi = static_cast<double>(s.index + 1) / static_cast<double>(r.N);
    c.rect(lo, c.box().y0, hi, c.box().y1, s.index % 2 ? "lightsteelblue" : "lavender", 0.5);
  }
  c.polyline(pts, "black", 1.0);
  double radius = std::sqrt(to_double(r.radius_sq));
  double hf = std::sqrt(to_double(r.h_frame_sq));
  Point right{1, r.triple.tan_theta}, left{-1, r.triple.tan_theta};
  for (std::size_t i = 0; i < r.balls.size(); ++i) {
    const CoverBall& b = r.balls[i];
    double x = to_double(b.center.x), y = to_double(b.center.y);
    c.circle(x, y, radius, "tomato", 0.2, "tomato");
    if (i % std::max<std::size_t>(1, r.balls.size() / 6) == 0) draw_wedge(c, b.center, right, left, hf, "teal", 0.25);
    c.dot(x, y, "tomato", 1.5);
  }
  return c.finish();
}

std::string svg_findcone(const PolylineCurve& curve, const Point& P, const ConeSearchResult& r,
                         const SvgStyle& style) {
  auto pts = to_doubles(curve.points());
  Canvas c(bounds(pts), style);
  double px = to_double(P.x), py = to_double(P.y);
  double reach = 0.5 * std::max(c.box().x1 - c.box().x0, c.box().y1 - c.box().y0);
  if (!r.trace.empty()) {
    const SearchState& s = r.trace.back();
    for (const Sector& sec : s.sectors) {
      for (const Point* d : {&sec.right, &sec.left}) {
        auto [ux, uy] = unit(*d);
        c.line(px, py, ux, uy, "lightgray", 0.6);
      }
    }
  }
  c.polyline(pts, "black", 1.2);
  if (r.triple) {
    PlanarCone cone = r.triple->cone_at(P);
    double h = std::min(to_double(r.triple->h), reach);
    draw_wedge(c, P, cone.right_boundary(), cone.left_boundary(), h, "seagreen", 0.35);
  }
  if (r.witness) {
    const Line& l = r.witness->line;
    Point d = l.direction();
    c.line(to_double(l.anchor().x), to_double(l.anchor().y), to_double(d.x), to_double(d.y), "crimson", 1);
    for (const Point& q : r.witness->report.points) c.dot(to_double(q.x), to_double(q.y), "crimson");
  }
  c.dot(px, py, "navy");
  c.text(c.box().x0, c.box().y1, to_string(r.outcome) + " at level " + std::to_string(r.level));
  return c.finish();
}

}  // namespace conecurve
