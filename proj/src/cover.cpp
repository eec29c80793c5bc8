#include "conecurve/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "conecurve/errors.hpp"
#include "conecurve/intersection.hpp"

namespace conecurve {

namespace {

// Restricts [lo, hi] to the t with c0 + c1 t >= 0. Returns false when empty.
bool clip_linear(const Rational& c0, const Rational& c1, Rational& lo, Rational& hi) {
  int s = sgn(c1);
  if (s == 0) return sgn(c0) >= 0 && lo <= hi;
  Rational root = -c0 / c1;
  if (s > 0) {
    if (root > lo) lo = root;
  } else {
    if (root < hi) hi = root;
  }
  return lo <= hi;
}

// Whether some point of segment [a, b] other than p lies in the closed,
// truncated double cone at p. Directions are tested in the cone frame.
bool segment_meets_cone(const Point& p, const Point& a, const Point& b, const Rational& tan_t, const Rotation& rot,
                        const Rational& radius_sq) {
  Point d = b - a;
  if (point_on_segment(p, a, b)) {
    // every other point of the segment lies on the line through p along d
    Point dl = rot.apply_inverse(d);
    return abs_value(dl.y) >= tan_t * abs_value(dl.x);
  }
  Point u = rot.apply_inverse(a - p);
  Point v = rot.apply_inverse(d);
  Point a0 = a - p;
  Rational dd = norm_sq(d);
  for (int half : {1, -1}) {
    Rational lo = 0, hi = 1;
    // half * y' - T x' >= 0 and half * y' + T x' >= 0
    if (!clip_linear(half * u.y - tan_t * u.x, half * v.y - tan_t * v.x, lo, hi)) continue;
    if (!clip_linear(half * u.y + tan_t * u.x, half * v.y + tan_t * v.x, lo, hi)) continue;
    Rational t = -dot(a0, d) / dd;
    if (t < lo) t = lo;
    if (t > hi) t = hi;
    Point q = a0 + t * d;
    if (norm_sq(q) <= radius_sq) return true;
  }
  return false;
}

bool avoids(const PolylineCurve& curve, const Point& p, const Rational& tan_t, const Rotation& rot,
            const Rational& radius_sq) {
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    if (segment_meets_cone(p, curve[i], curve[i + 1], tan_t, rot, radius_sq)) return false;
  }
  return true;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct Piece {
  bool present = false;
  Point from, to;
};

// Part of the segment [a, b] inside the closed strip lo <= x <= hi.
Piece clip_to_strip(const Point& a, const Point& b, const Rational& lo, const Rational& hi) {
  Piece pc;
  if (a.x == b.x) {
    if (a.x >= lo && a.x <= hi) pc = {true, a, b};
    return pc;
  }
  Rational t0 = (lo - a.x) / (b.x - a.x);
  Rational t1 = (hi - a.x) / (b.x - a.x);
  if (t0 > t1) std::swap(t0, t1);
  if (t0 < 0) t0 = 0;
  if (t1 > 1) t1 = 1;
  if (t0 > t1) return pc;
  Point d = b - a;
  pc = {true, a + t0 * d, a + t1 * d};
  return pc;
}

Rational isqrt_floor(const Rational& x) {
  Integer fl = x.get_num() / x.get_den();
  Integer r;
  mpz_sqrt(r.get_mpz_t(), fl.get_mpz_t());
  return Rational(r);
}

}  // namespace

AvoidanceTriple AvoidanceTriple::make(Rational tan_theta, Rational tan_rho, Rational h) {
  if (sgn(tan_theta) <= 0) throw DomainError("tan(theta) must be positive");
  if (sgn(h) <= 0) throw DomainError("h must be positive");
  return {std::move(tan_theta), Rotation::from_tangent(tan_rho), std::move(h)};
}

PlanarCone AvoidanceTriple::cone_at(const Point& p) const { return PlanarCone(p, tan_theta, rho, h); }

std::string AvoidanceTriple::str() const {
  return "(tan_theta=" + to_string(tan_theta) + ", rho=(" + to_string(rho.c()) + "," + to_string(rho.s()) +
         "), h=" + to_string(h) + ")";
}

bool gamma_n_contains(const PolylineCurve& curve, const Point& p, const AvoidanceTriple& triple) {
  if (!curve.contains(p)) throw NotOnCurve("point " + to_string(p) + " is not on the curve");
  if (sgn(triple.tan_theta) <= 0 || sgn(triple.h) <= 0) throw DomainError("invalid triple");
  return avoids(curve, p, triple.tan_theta, triple.rho, triple.h * triple.h);
}

Normalized normalize_to_unit_square(const PolylineCurve& curve) {
  TransformRecord t{curve.x_min(), curve.y_min(), curve.x_max() - curve.x_min(), curve.y_max() - curve.y_min()};
  if (sgn(t.w) == 0 || sgn(t.hgt) == 0) throw DegenerateInput("bounding box is degenerate");
  std::vector<Point> pts;
  pts.reserve(curve.size());
  for (const Point& p : curve.points()) pts.push_back(t.forward(p));
  Rational scale = std::max(1 / t.w, 1 / t.hgt);
  return {PolylineCurve(std::move(pts), curve.model_error() * scale), t};
}

Point CoverFrame::forward(const Point& p) const {
  Point r = rho.apply_inverse(p) - offset;
  return {r.x / span, r.y / span};
}

CoverFrame cover_frame(const PolylineCurve& curve, const Rotation& rho) {
  CoverFrame f{rho, {}, 0};
  Point first = rho.apply_inverse(curve[0]);
  Rational x0 = first.x, x1 = first.x, y0 = first.y, y1 = first.y;
  for (const Point& p : curve.points()) {
    Point r = rho.apply_inverse(p);
    x0 = std::min(x0, r.x);
    x1 = std::max(x1, r.x);
    y0 = std::min(y0, r.y);
    y1 = std::max(y1, r.y);
  }
  f.offset = {x0, y0};
  f.span = std::max(x1 - x0, y1 - y0);
  if (sgn(f.span) == 0) throw DegenerateInput("curve has zero extent");
  return f;
}

Rational cover_bound(std::size_t k, const Rational& cos_theta) {
  if (sgn(cos_theta) <= 0 || cos_theta > 1) throw DomainError("cos(theta) must lie in (0, 1]");
  return Rational(2 * static_cast<long>(k)) / cos_theta;
}

std::size_t smallest_admissible_N(const PolylineCurve& curve, const AvoidanceTriple& triple) {
  CoverFrame f = cover_frame(curve, triple.rho);
  Rational hsq = triple.h * triple.h * f.scale_sq();
  Rational a = (1 + triple.tan_theta * triple.tan_theta) / hsq;
  // smallest N with N^2 > a
  Rational n = isqrt_floor(a) + 1;
  if (n > Rational(1L << 30)) throw PreconditionError("required strip count is too large");
  return static_cast<std::size_t>(n.get_num().get_ui());
}

CoverReport build_strip_cover(const PolylineCurve& curve, const AvoidanceTriple& triple, std::size_t k,
                              std::optional<std::size_t> N_opt) {
  if (k == 0) throw DomainError("k must be positive");
  CoverFrame frame = cover_frame(curve, triple.rho);
  std::vector<Point> fp;
  fp.reserve(curve.size());
  for (const Point& p : curve.points()) fp.push_back(frame.forward(p));
  PolylineCurve fc(std::move(fp));

  CoverReport rep;
  rep.triple = triple;
  rep.k = k;
  rep.N = N_opt ? *N_opt : smallest_admissible_N(curve, triple);
  rep.h_frame_sq = triple.h * triple.h * frame.scale_sq();
  const Rational t = triple.tan_theta;
  const Rational one_t2 = 1 + t * t;
  const Rational Nq(static_cast<unsigned long>(rep.N));
  if (rep.N == 0 || !(one_t2 < Nq * Nq * rep.h_frame_sq)) {
    throw PreconditionError("strip width 1/N must be below cos(theta) h");
  }
  rep.radius_sq = one_t2 / (Nq * Nq);
  const Rotation vertical;
  const bool simple = is_simple(fc);

  std::map<Point, bool> memo;
  auto member = [&](const Point& p) {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    bool m = avoids(fc, p, t, vertical, rep.h_frame_sq);
    memo.emplace(p, m);
    return m;
  };

  std::size_t total_centers = 0;
  const std::size_t segs = fc.segment_count();
  for (std::size_t j = 0; j < rep.N; ++j) {
    Rational lo = Rational(static_cast<unsigned long>(j)) / Nq;
    Rational hi = Rational(static_cast<unsigned long>(j + 1)) / Nq;
    std::vector<Piece> pieces(segs);
    bool any = false;
    for (std::size_t i = 0; i < segs; ++i) {
      pieces[i] = clip_to_strip(fc[i], fc[i + 1], lo, hi);
      any = any || pieces[i].present;
    }
    if (!any) continue;
    UnionFind uf(segs);
    for (std::size_t i = 0; i + 1 < segs; ++i) {
      if (pieces[i].present && pieces[i + 1].present) uf.unite(i, i + 1);
    }
    if (!simple) {
      for (std::size_t i = 0; i < segs; ++i) {
        for (std::size_t m = i + 2; m < segs && pieces[i].present; ++m) {
          if (pieces[m].present && segments_intersect(pieces[i].from, pieces[i].to, pieces[m].from, pieces[m].to)) {
            uf.unite(i, m);
          }
        }
      }
    }

    // gamma_n candidates: breakpoints in the strip and strip-boundary crossings
    struct Cand {
      Point p;
      std::size_t piece;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < fc.size(); ++i) {
      if (fc[i].x < lo || fc[i].x > hi) continue;
      std::size_t pc = i < segs && pieces[i].present ? i : i - 1;
      cands.push_back({fc[i], pc});
    }
    for (std::size_t i = 0; i < segs; ++i) {
      if (!pieces[i].present) continue;
      for (const Point& e : {pieces[i].from, pieces[i].to}) {
        if (!(e == fc[i]) && !(e == fc[i + 1])) cands.push_back({e, i});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.p < b.p; });

    StripInfo info;
    info.index = j;
    std::vector<Cand> in_gamma;
    for (const Cand& c : cands) {
      if (member(c.p)) in_gamma.push_back(c);
    }
    if (in_gamma.empty()) continue;
    std::unordered_set<std::size_t> roots;
    for (std::size_t i = 0; i < segs; ++i) {
      if (pieces[i].present) roots.insert(uf.find(i));
    }
    info.components = roots.size();
    info.candidates = in_gamma.size();
    rep.gamma_points += in_gamma.size();

    std::map<std::size_t, Point> admitted;  // component root -> center
    for (const Cand& c : in_gamma) {
      std::size_t root = uf.find(c.piece);
      if (admitted.count(root)) continue;
      admitted.emplace(root, c.p);
      info.centers.push_back(c.p);
    }
    for (const Point& c : info.centers) rep.balls.push_back({j, c});
    total_centers += info.centers.size();

    auto in_some_ball = [&](const Point& q) {
      for (const Point& c : info.centers) {
        if (dist_sq(q, c) <= rep.radius_sq) return true;
      }
      return false;
    };
    for (const Cand& c : in_gamma) {
      if (!in_some_ball(c.p)) {
        rep.covers_gamma_n = false;
        rep.uncovered.push_back(c.p);
      }
    }
    for (std::size_t i = 0; i < segs; ++i) {
      if (!pieces[i].present || !admitted.count(uf.find(i))) continue;
      if (!in_some_ball(pieces[i].from) || !in_some_ball(pieces[i].to)) rep.covers_components = false;
    }

    // |P_j| <= ceil(x) iff |P_j| - 1 < x, with x = 1 / (sin(theta) h)
    Rational below(static_cast<unsigned long>(info.centers.size() > 0 ? info.centers.size() - 1 : 0));
    info.count_bound_ok = info.centers.size() <= 2 * k && below * below * t * t * rep.h_frame_sq < one_t2;
    rep.per_strip_ok = rep.per_strip_ok && info.count_bound_ok;
    rep.strips_hit.push_back(std::move(info));
  }

  rep.total_radius_sec = Rational(static_cast<unsigned long>(total_centers)) / Nq;
  rep.bound_ok = rep.total_radius_sec <= Rational(static_cast<unsigned long>(2 * k));
  double sec = std::sqrt(to_double(one_t2));
  rep.total_radius = to_double(rep.total_radius_sec) * sec;
  rep.bound = 2.0 * static_cast<double>(k) * sec;
  return rep;
}

SigmaFiniteReport sigma_finite_decomposition(const PolylineCurve& curve, std::size_t k,
                                             const std::vector<AvoidanceTriple>& triples, bool build_covers) {
  SigmaFiniteReport rep;
  rep.total = curve.size();
  std::vector<bool> hit(curve.size(), false);
  for (const AvoidanceTriple& tr : triples) {
    TripleMembership m;
    m.triple = tr;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      if (avoids(curve, curve[i], tr.tan_theta, tr.rho, tr.h * tr.h)) {
        ++m.members;
        hit[i] = true;
      }
    }
    if (build_covers && m.members > 0) {
      std::size_t n = smallest_admissible_N(curve, tr);
      if (n <= 4096) m.cover = build_strip_cover(curve, tr, k, n);
    }
    rep.entries.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < hit.size(); ++i) {
    if (hit[i]) ++rep.assigned;
    else rep.never_assigned.push_back(i);
  }
  return rep;
}

Rational calkin_wilf(std::size_t index) {
  Rational q = 1;
  for (std::size_t i = 0; i < index; ++i) {
    Integer fl = q.get_num() / q.get_den();
    q = 1 / (2 * Rational(fl) - q + 1);
  }
  return q;
}

std::vector<AvoidanceTriple> enumerate_rational_triples(std::size_t count) {
  std::vector<AvoidanceTriple> out;
  auto signed_rational = [](std::size_t b) -> Rational {
    if (b == 0) return 0;
    Rational r = calkin_wilf((b - 1) / 2);
    return b % 2 == 1 ? r : Rational(-r);
  };
  for (std::size_t n = 0; out.size() < count; ++n) {
    for (std::size_t a = 0; a <= n && out.size() < count; ++a) {
      for (std::size_t b = 0; a + b <= n && out.size() < count; ++b) {
        std::size_t c = n - a - b;
        out.push_back(AvoidanceTriple::make(calkin_wilf(a), signed_rational(b), calkin_wilf(c)));
      }
    }
  }
  return out;
}

namespace {

struct DPoint {
  double x, y;
};

std::vector<DPoint> to_doubles(const PolylineCurve& c) {
  std::vector<DPoint> v;
  v.reserve(c.size());
  for (const Point& p : c.points()) v.push_back({to_double(p.x), to_double(p.y)});
  return v;
}

struct ArcPos {
  std::size_t seg;
  double t;
};

DPoint at(const std::vector<DPoint>& v, const ArcPos& p) {
  const DPoint& a = v[p.seg];
  const DPoint& b = v[p.seg + 1];
  return {a.x + p.t * (b.x - a.x), a.y + p.t * (b.y - a.y)};
}

// First position after `from` where the curve reaches distance r from u.
std::optional<ArcPos> exit_point(const std::vector<DPoint>& v, ArcPos from, const DPoint& u, double r) {
  for (std::size_t s = from.seg; s + 1 < v.size(); ++s) {
    double t0 = s == from.seg ? from.t : 0.0;
    const DPoint& a = v[s];
    const DPoint& b = v[s + 1];
    double dx = b.x - a.x, dy = b.y - a.y;
    double ax = a.x - u.x, ay = a.y - u.y;
    double qa = dx * dx + dy * dy;
    double qb = 2 * (ax * dx + ay * dy);
    double qc = ax * ax + ay * ay - r * r;
    double disc = qb * qb - 4 * qa * qc;
    if (disc < 0) continue;
    double t = (-qb + std::sqrt(disc)) / (2 * qa);
    if (t > t0 && t <= 1.0) return ArcPos{s, t};
  }
  return std::nullopt;
}

std::size_t greedy_balls(const std::vector<DPoint>& v, double r) {
  std::size_t count = 0;
  ArcPos pos{0, 0.0};
  for (;;) {
    DPoint u = at(v, pos);
    auto c = exit_point(v, pos, u, r);
    ++count;
    if (!c) break;
    auto e = exit_point(v, *c, at(v, *c), r);
    if (!e) break;
    pos = *e;
  }
  return count;
}

}  // namespace

H1Estimate h1_upper_estimate(const std::vector<PolylineCurve>& curves, const std::vector<double>& scales) {
  if (scales.empty()) throw DomainError("at least one scale is required");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0)) throw DomainError("scales must be positive");
    if (i > 0 && !(scales[i] < scales[i - 1])) throw DomainError("scales must be strictly decreasing");
  }
  H1Estimate est;
  est.scales = scales;
  std::vector<std::vector<DPoint>> pts;
  for (const auto& c : curves) pts.push_back(to_doubles(c));
  for (double r : scales) {
    std::size_t n = 0;
    for (const auto& v : pts) n += greedy_balls(v, r);
    est.balls.push_back(n);
    est.sums.push_back(2.0 * r * static_cast<double>(n));
  }
  for (std::size_t i = 1; i < est.sums.size(); ++i) {
    if (est.sums[i] > est.sums[i - 1]) est.nonincreasing = false;
  }
  return est;
}

H1Estimate h1_upper_estimate(const PolylineCurve& curve, const std::vector<double>& scales) {
  return h1_upper_estimate(std::vector<PolylineCurve>{curve}, scales);
}

DimensionEstimate box_dimension_estimate(const PolylineCurve& curve, const std::vector<int>& exponents) {
  if (exponents.size() < 3) throw DomainError("box counting needs at least three scales");
  Rational span = std::max(curve.x_max() - curve.x_min(), curve.y_max() - curve.y_min());
  if (sgn(span) == 0) throw DegenerateInput("curve is a single point");
  const double x0 = to_double(curve.x_min());
  const double y0 = to_double(curve.y_min());
  const double sp = to_double(span);
  std::vector<DPoint> v;
  for (const Point& p : curve.points()) v.push_back({(to_double(p.x) - x0) / sp, (to_double(p.y) - y0) / sp});

  DimensionEstimate est;
  est.exponents = exponents;
  for (int e : exponents) {
    if (e < 0 || e > 24) throw DomainError("grid exponent out of range");
    const long n = 1L << e;
    auto cell = [&](double c) {
      long i = static_cast<long>(std::floor(c * static_cast<double>(n)));
      return std::clamp(i, 0L, n - 1);
    };
    std::unordered_set<long long> occupied;
    auto mark = [&](long ix, long iy) { occupied.insert(static_cast<long long>(ix) * (n + 1) + iy); };
    for (std::size_t s = 0; s + 1 < v.size(); ++s) {
      DPoint a = v[s], b = v[s + 1];
      long ix = cell(a.x), iy = cell(a.y);
      const long ex = cell(b.x), ey = cell(b.y);
      mark(ix, iy);
      double dx = (b.x - a.x) * static_cast<double>(n);
      double dy = (b.y - a.y) * static_cast<double>(n);
      double ax = a.x * static_cast<double>(n), ay = a.y * static_cast<double>(n);
      long step_x = ex > ix ? 1 : -1;
      long step_y = ey > iy ? 1 : -1;
      double tmx = dx != 0 ? ((step_x > 0 ? ix + 1 : ix) - ax) / dx : INFINITY;
      double tmy = dy != 0 ? ((step_y > 0 ? iy + 1 : iy) - ay) / dy : INFINITY;
      double tdx = dx != 0 ? std::abs(1.0 / dx) : INFINITY;
      double tdy = dy != 0 ? std::abs(1.0 / dy) : INFINITY;
      long steps = std::abs(ex - ix) + std::abs(ey - iy);
      for (long k = 0; k < steps; ++k) {
        bool move_x = iy == ey || (ix != ex && tmx < tmy);
        if (move_x) {
          ix += step_x;
          tmx += tdx;
        } else {
          iy += step_y;
          tmy += tdy;
        }
        mark(ix, iy);
      }
    }
    est.counts.push_back(occupied.size());
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    double x = exponents[i] * std::log(2.0);
    double y = std::log(static_cast<double>(est.counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  est.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return est;
}

}  // namespace conecurve
