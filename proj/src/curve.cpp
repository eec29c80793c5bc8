#include "conecurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "conecurve/counterexample.hpp"
#include "conecurve/errors.hpp"

namespace conecurve {

bool point_on_segment(const Point& p, const Point& a, const Point& b) {
  if (sgn(cross(b - a, p - a)) != 0) return false;
  return sgn(dot(p - a, p - b)) <= 0;
}

PolylineCurve::PolylineCurve(std::vector<Point> breakpoints, Rational model_error)
    : points_(std::move(breakpoints)), model_error_(std::move(model_error)) {
  if (points_.size() < 2) throw DegenerateInput("a polyline needs at least two breakpoints");
  x_min_ = x_max_ = points_[0].x;
  y_min_ = y_max_ = points_[0].y;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (i > 0) {
      if (p == points_[i - 1]) throw DegenerateInput("consecutive breakpoints must be distinct");
      if (p.x <= points_[i - 1].x) function_graph_ = false;
      if (p.x < points_[i - 1].x) x_monotone_ = false;
    }
    x_min_ = std::min(x_min_, p.x);
    x_max_ = std::max(x_max_, p.x);
    y_min_ = std::min(y_min_, p.y);
    y_max_ = std::max(y_max_, p.y);
  }
}

bool PolylineCurve::contains(const Point& p) const {
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (point_on_segment(p, points_[i], points_[i + 1])) return true;
  }
  return false;
}

void PolylineCurve::require_function_graph() const {
  if (!function_graph_) throw NonFunctionCurve();
}

FunctionSpec FunctionSpec::cube_root(Rational lo, Rational hi) {
  FunctionSpec s;
  s.kind_ = Kind::cube_root;
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  if (s.lo_ >= s.hi_) throw DomainError("empty domain");
  return s;
}

FunctionSpec FunctionSpec::square_root(Rational lo, Rational hi) {
  FunctionSpec s;
  s.kind_ = Kind::square_root;
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  if (s.lo_ >= s.hi_) throw DomainError("empty domain");
  if (sgn(s.lo_) < 0) throw DomainError("square root domain must lie in [0, inf)");
  return s;
}

FunctionSpec FunctionSpec::polynomial(std::vector<Rational> coeffs, Rational lo, Rational hi) {
  FunctionSpec s;
  s.kind_ = Kind::polynomial;
  s.coeffs_ = std::move(coeffs);
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  if (s.lo_ >= s.hi_) throw DomainError("empty domain");
  if (s.coeffs_.empty()) s.coeffs_.push_back(Rational(0));
  return s;
}

FunctionSpec FunctionSpec::affine(Rational slope, Rational intercept, Rational lo, Rational hi) {
  return polynomial({std::move(intercept), std::move(slope)}, std::move(lo), std::move(hi));
}

FunctionSpec FunctionSpec::counterexample(Rational lambda, unsigned depth) {
  CounterexampleParams params{lambda, depth, 2};
  params.validate();
  FunctionSpec s;
  s.kind_ = Kind::counterexample;
  s.lambda_ = std::move(lambda);
  s.depth_ = depth;
  s.lo_ = 0;
  s.hi_ = 1;
  return s;
}

FunctionSpec FunctionSpec::table(std::vector<Point> nodes) {
  if (nodes.size() < 2) throw DegenerateInput("table needs at least two nodes");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].x <= nodes[i - 1].x) throw NonFunctionCurve("table x values must strictly increase");
  }
  FunctionSpec s;
  s.kind_ = Kind::table;
  s.lo_ = nodes.front().x;
  s.hi_ = nodes.back().x;
  s.table_ = std::move(nodes);
  return s;
}

bool FunctionSpec::exact() const {
  return kind_ == Kind::polynomial || kind_ == Kind::affine || kind_ == Kind::table;
}

bool FunctionSpec::monotone_hint() const {
  switch (kind_) {
    case Kind::cube_root:
    case Kind::square_root:
      return true;
    case Kind::polynomial:
      return coeffs_.size() <= 2;
    default:
      return false;
  }
}

Rational FunctionSpec::evaluate(const Rational& x) const {
  if (x < lo_ || x > hi_) throw DomainError("evaluation outside the function domain");
  switch (kind_) {
    case Kind::cube_root:
      return cbrt_trunc(x);
    case Kind::square_root:
      return sqrt_floor(x);
    case Kind::polynomial:
    case Kind::affine: {
      Rational acc = 0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
    case Kind::counterexample:
      return counterexample_value(x, lambda_, depth_);
    case Kind::table: {
      auto it = std::lower_bound(table_.begin(), table_.end(), x,
                                 [](const Point& p, const Rational& v) { return p.x < v; });
      if (it->x == x) return it->y;
      const Point& b = *it;
      const Point& a = *(it - 1);
      return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    }
  }
  throw DomainError("unknown function kind");
}

std::vector<Rational> FunctionSpec::nodes(const GridSpec& grid) const {
  std::vector<Rational> xs;
  if (grid.uniform_nodes >= 2) {
    Rational n = static_cast<unsigned long>(grid.uniform_nodes - 1);
    for (std::size_t i = 0; i < grid.uniform_nodes; ++i) {
      xs.push_back(lo_ + (hi_ - lo_) * Rational(static_cast<unsigned long>(i)) / n);
    }
  }
  const unsigned m = grid.graded_levels;
  auto grade_toward = [&](const Rational& s, const Rational& far) {
    for (unsigned j = 0; j <= m; ++j) xs.push_back(s + (far - s) * pow2(-static_cast<int>(j)));
    xs.push_back(s);
  };
  if (m > 0) {
    switch (kind_) {
      case Kind::cube_root:
        if (sgn(lo_) < 0 && sgn(hi_) > 0) {
          grade_toward(Rational(0), hi_);
          grade_toward(Rational(0), lo_);
        } else if (sgn(lo_) == 0) {
          grade_toward(lo_, hi_);
        } else if (sgn(hi_) == 0) {
          grade_toward(hi_, lo_);
        }
        break;
      case Kind::square_root:
        if (sgn(lo_) == 0) grade_toward(lo_, hi_);
        break;
      case Kind::counterexample:
        for (const Rational& x : counterexample_nodes(depth_, m)) xs.push_back(x);
        break;
      default:
        break;
    }
  }
  xs.push_back(lo_);
  xs.push_back(hi_);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::string FunctionSpec::kind_name() const {
  switch (kind_) {
    case Kind::cube_root: return "cube_root";
    case Kind::square_root: return "square_root";
    case Kind::polynomial: return "polynomial";
    case Kind::counterexample: return "counterexample";
    case Kind::affine: return "affine";
    case Kind::table: return "table";
  }
  return "unknown";
}

PolylineCurve polyline_from_nodes(const FunctionSpec& spec, std::vector<Rational> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2) throw PreconditionError("grid needs at least two nodes inside the domain");
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (const Rational& x : xs) pts.push_back({x, spec.evaluate(x)});
  Rational err = spec.exact() ? Rational(0) : pow2(-static_cast<int>(kSnapBits));
  return PolylineCurve(std::move(pts), err);
}

PolylineCurve sample_to_polyline(const FunctionSpec& spec, const GridSpec& grid) {
  return polyline_from_nodes(spec, spec.nodes(grid));
}

double arc_length(const PolylineCurve& curve) {
  double total = 0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) total += distance(curve[i], curve[i + 1]);
  return total;
}

Rational interpolate_y(const PolylineCurve& curve, const Rational& x) {
  curve.require_function_graph();
  const auto& pts = curve.points();
  if (x < pts.front().x || x > pts.back().x) throw DomainError("x outside the curve's range");
  auto it = std::lower_bound(pts.begin(), pts.end(), x, [](const Point& p, const Rational& v) { return p.x < v; });
  if (it->x == x) return it->y;
  const Point& b = *it;
  const Point& a = *(it - 1);
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

PolylineCurve restrict_x(const PolylineCurve& curve, const Rational& lo, const Rational& hi) {
  curve.require_function_graph();
  Rational a = std::max(lo, curve.x_min());
  Rational b = std::min(hi, curve.x_max());
  if (a >= b) throw DomainError("restriction interval does not meet the curve's x-range in a nondegenerate interval");
  std::vector<Point> pts;
  pts.push_back({a, interpolate_y(curve, a)});
  for (const Point& p : curve.points()) {
    if (p.x > a && p.x < b) pts.push_back(p);
  }
  pts.push_back({b, interpolate_y(curve, b)});
  return PolylineCurve(std::move(pts), curve.model_error());
}

PolylineCurve read_curve_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::vector<Point> pts;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "x,y") throw ParseError("curve CSV must start with the header 'x,y'");
      header_seen = true;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected two columns");
    }
    try {
      pts.push_back({parse_rational(line.substr(0, comma)), parse_rational(line.substr(comma + 1))});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header_seen) throw ParseError("empty curve CSV");
  return PolylineCurve(std::move(pts));
}

PolylineCurve load_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open curve file '" + path + "'");
  return read_curve_csv(in);
}

void write_curve_csv(std::ostream& out, const PolylineCurve& curve) {
  out << "x,y\n";
  for (const Point& p : curve.points()) out << to_string(p.x) << ',' << to_string(p.y) << '\n';
}

void save_curve_csv(const std::string& path, const PolylineCurve& curve) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write curve file '" + path + "'");
  write_curve_csv(out, curve);
}

}  // namespace conecurve
