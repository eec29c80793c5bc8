#include "conecurve/cone_finder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "conecurve/errors.hpp"

namespace conecurve {

namespace {

constexpr unsigned kMaxLevel = 48;

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

// Restricts [lo, hi] to c0 + c1 t >= 0. Returns false when empty.
bool restrict_linear(const Rational& c0, const Rational& c1, Rational& lo, Rational& hi) {
  int s = sgn(c1);
  if (s == 0) return sgn(c0) >= 0;
  Rational root = -c0 / c1;
  if (s > 0) {
    if (root > lo) lo = root;
  } else if (root < hi) {
    hi = root;
  }
  return lo <= hi;
}

struct RawPiece {
  ClipPiece piece;
  Rational t0, t1;
};

void clip_segment(const Wedge& w, std::size_t seg, const Point& a, const Point& b, std::vector<RawPiece>& out) {
  Point a0 = a - w.vertex;
  Point d = b - a;
  for (int s : {1, -1}) {
    Rational lo = 0, hi = 1;
    Rational sg = s;
    if (!restrict_linear(sg * cross(w.right, a0), sg * cross(w.right, d), lo, hi)) continue;
    if (!restrict_linear(sg * cross(a0, w.left), sg * cross(d, w.left), lo, hi)) continue;
    RawPiece rp;
    rp.piece.segment = seg;
    rp.piece.half = s;
    rp.piece.from = a + lo * d;
    rp.piece.to = a + hi * d;
    rp.t0 = lo;
    rp.t1 = hi;
    out.push_back(std::move(rp));
  }
}

// Squared distance from p to the closed segment [a, b].
Rational seg_dist_sq(const Point& p, const Point& a, const Point& b) {
  Point d = b - a;
  Rational len = norm_sq(d);
  if (sgn(len) == 0) return dist_sq(p, a);
  Rational t = dot(p - a, d) / len;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return dist_sq(p, a + t * d);
}

bool on_side_line(const Wedge& w, const Point& q) {
  Point v = q - w.vertex;
  return sgn(cross(w.right, v)) == 0 || sgn(cross(v, w.left)) == 0;
}

// Positive rational at most sqrt(x) for x > 0.
Rational rational_sqrt_below(const Rational& x) {
  unsigned bits = kSnapBits;
  for (;;) {
    Rational r = sqrt_floor(x, bits);
    if (sgn(r) > 0) return r;
    bits *= 2;
  }
}

// Largest L1 distance from P to a breakpoint; bounds every distance from P
// to the curve.
Rational diameter_cap(const PolylineCurve& curve, const Point& P) {
  Rational cap = 0;
  for (const Point& q : curve.points()) {
    Rational l1 = abs_value(q.x - P.x) + abs_value(q.y - P.y);
    if (l1 > cap) cap = l1;
  }
  if (sgn(cap) == 0) cap = 1;
  return cap;
}

Rational l1(const Point& p) { return abs_value(p.x) + abs_value(p.y); }

template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& f) {
  unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          f(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

unsigned threshold_level(std::size_t k) {
  unsigned n = 0;
  while ((std::size_t{1} << n) < 2 * k + 3) ++n;
  return n;
}

}  // namespace

Wedge Wedge::of(const PlanarCone& cone) { return {cone.vertex(), cone.right_boundary(), cone.left_boundary()}; }

int Wedge::half_of(const Point& w) const {
  int a = sgn(cross(right, w)), b = sgn(cross(w, left));
  if (a >= 0 && b >= 0) return 1;
  if (a <= 0 && b <= 0) return -1;
  return 0;
}

ComponentSet components_in_wedge(const PolylineCurve& curve, const Wedge& wedge) {
  std::vector<RawPiece> raw;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) clip_segment(wedge, i, curve[i], curve[i + 1], raw);

  UnionFind uf(raw.size());
  bool closed = curve.size() > 2 && curve[0] == curve[curve.size() - 1];
  bool simple = is_simple(curve);
  std::optional<std::size_t> at_vertex;
  for (std::size_t a = 0; a < raw.size(); ++a) {
    const RawPiece& p = raw[a];
    if (p.piece.from == wedge.vertex || p.piece.to == wedge.vertex) {
      if (at_vertex) uf.unite(*at_vertex, a);
      else at_vertex = a;
    }
    for (std::size_t b = a + 1; b < raw.size(); ++b) {
      const RawPiece& q = raw[b];
      bool linked = false;
      if (q.piece.segment == p.piece.segment + 1 && p.t1 == 1 && q.t0 == 0) linked = true;
      if (closed && p.piece.segment == 0 && q.piece.segment + 2 == curve.size() && p.t0 == 0 && q.t1 == 1)
        linked = true;
      if (!linked && !simple) linked = segments_intersect(p.piece.from, p.piece.to, q.piece.from, q.piece.to);
      if (linked) uf.unite(a, b);
    }
  }

  ComponentSet set;
  std::vector<std::size_t> slot(raw.size(), static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < raw.size(); ++a) {
    std::size_t root = uf.find(a);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = set.components.size();
      set.components.emplace_back();
    }
    set.components[slot[root]].pieces.push_back(raw[a].piece);
  }
  for (std::size_t c = 0; c < set.components.size(); ++c) {
    Component& comp = set.components[c];
    std::vector<Point> sides;
    for (const ClipPiece& pc : comp.pieces) {
      for (const Point* q : {&pc.from, &pc.to}) {
        if (*q == wedge.vertex) {
          comp.contains_vertex = true;
          continue;
        }
        if (on_side_line(wedge, *q) && std::find(sides.begin(), sides.end(), *q) == sides.end()) sides.push_back(*q);
        Rational r = dist_sq(*q, wedge.vertex);
        Rational& reach = pc.half > 0 ? comp.reach_sq_upper : comp.reach_sq_lower;
        if (r > reach) reach = r;
      }
      if (!pc.degenerate()) (pc.half > 0 ? comp.path_upper : comp.path_lower) = true;
    }
    comp.side_points = sides.size();
    if (comp.contains_vertex) set.vertex_component = c;
  }
  return set;
}

ComponentSet connected_components_in_cone(const PolylineCurve& curve, const PlanarCone& cone,
                                          std::optional<std::size_t> k) {
  if (cone.truncated()) throw PreconditionError("component clipping needs an untruncated cone");
  if (!curve.contains(cone.vertex())) throw NotOnCurve("cone vertex " + to_string(cone.vertex()) + " is not on the curve");
  ComponentSet set = components_in_wedge(curve, Wedge::of(cone));
  if (k) set.exceeds_bound = set.components.size() > 2 * *k + 1;
  return set;
}

namespace {

struct Boundary {
  Point frame;   // exact direction in the cone frame
  long double angle;
};

// Boundary j of the 2^level fan, computed from the reduced fraction j / 2^level
// so that boundaries shared between levels are identical.
Boundary fan_boundary(const Rational& t0, long double phi0, std::size_t j, unsigned level) {
  std::size_t full = std::size_t{1} << level;
  if (j == 0) return {{Rational(1), t0}, phi0};
  if (j == full) return {{Rational(-1), t0}, static_cast<long double>(M_PIl) - phi0};
  while (level > 0 && j % 2 == 0) {
    j /= 2;
    --level;
  }
  if (level == 1) return {{Rational(0), Rational(1)}, M_PIl / 2};
  long double psi = phi0 + static_cast<long double>(j) * (M_PIl - 2 * phi0) / std::ldexp(1.0L, static_cast<int>(level));
  return {{from_long_double(std::cos(psi)), from_long_double(std::sin(psi))}, psi};
}

}  // namespace

std::vector<Sector> fan_sectors(const Rational& tan_phi0, const Rotation& rotation, unsigned level) {
  if (sgn(tan_phi0) <= 0) throw DomainError("tan(phi0) must be positive");
  if (level > kMaxLevel) throw DomainError("fan level above " + std::to_string(kMaxLevel));
  long double phi0 = std::atan(static_cast<long double>(to_double(tan_phi0)));
  std::size_t full = std::size_t{1} << level;
  std::vector<Boundary> b;
  b.reserve(full + 1);
  for (std::size_t j = 0; j <= full; ++j) b.push_back(fan_boundary(tan_phi0, phi0, j, level));
  for (std::size_t j = 0; j < full; ++j) {
    if (sgn(cross(b[j].frame, b[j + 1].frame)) <= 0) throw std::logic_error("fan boundaries out of order");
  }
  std::vector<Sector> out(full);
  for (std::size_t i = 0; i < full; ++i) {
    std::size_t jr = full - i - 1, jl = full - i;
    out[i] = {level, i, rotation.apply(b[jr].frame), rotation.apply(b[jl].frame), static_cast<double>(b[jr].angle),
              static_cast<double>(b[jl].angle)};
  }
  return out;
}

double bisection_phi(double phi0, unsigned level) {
  double phi = phi0;
  for (unsigned n = 0; n < level; ++n) phi = M_PI / 4 + phi / 2;
  return phi;
}

double bisection_rho(double phi0, unsigned level, std::size_t i) {
  if (level == 0) return 0;
  double phin = bisection_phi(phi0, level);
  double steps = std::ldexp(1.0, static_cast<int>(level)) - 1;
  return (phin - phi0) - static_cast<double>(i) * 2 * (phin - phi0) / steps;
}

std::string to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::found: return "found";
    case SearchOutcome::violation: return "violation";
    case SearchOutcome::exhausted: return "exhausted";
  }
  return "exhausted";
}

namespace {

SectorState evaluate_sector(const PolylineCurve& curve, const Point& P, const Sector& s, const Rational& cap_sq) {
  Wedge w{P, s.right, s.left};
  ComponentSet set = components_in_wedge(curve, w);
  SectorState st;
  st.index = s.index;
  st.angle_lo = s.angle_lo;
  st.angle_hi = s.angle_hi;
  st.components = set.components.size();
  if (!set.vertex_component) throw std::logic_error("vertex missing from its own sector");
  const Component& gp = set.components[*set.vertex_component];

  st.avoided_truncated = gp.trivial();
  st.avoided_untruncated = gp.trivial() && set.components.size() == 1;

  std::optional<Rational> other;
  for (std::size_t c = 0; c < set.components.size(); ++c) {
    if (c == *set.vertex_component) continue;
    for (const ClipPiece& pc : set.components[c].pieces) {
      Rational d = seg_dist_sq(P, pc.from, pc.to);
      if (!other || d < *other) other = d;
    }
  }
  st.h_sq = other ? std::min(cap_sq, Rational(*other / 4)) : cap_sq;

  st.r_sq = cap_sq;
  for (const ClipPiece& pc : gp.pieces) {
    if (pc.degenerate()) continue;
    Point a = pc.from - P, b = pc.to - P;
    for (const Point* dir : {&s.right, &s.left}) {
      bool ia = sgn(cross(*dir, a)) == 0, ib = sgn(cross(*dir, b)) == 0;
      if (ia && ib) {
        if (pc.from == P || pc.to == P) {
          st.r_sq = 0;
          st.boundary_contact = true;
        } else {
          st.r_sq = std::min({st.r_sq, norm_sq(a), norm_sq(b)});
        }
      } else if (ia && pc.from != P) {
        st.r_sq = std::min(st.r_sq, norm_sq(a));
      } else if (ib && pc.to != P) {
        st.r_sq = std::min(st.r_sq, norm_sq(b));
      }
    }
  }

  st.path_upper = gp.path_upper;
  st.path_lower = gp.path_lower;
  Rational up = gp.path_upper ? gp.reach_sq_upper : cap_sq;
  Rational dn = gp.path_lower ? gp.reach_sq_lower : cap_sq;
  st.d_sq = std::min({up, dn, cap_sq});
  return st;
}

}  // namespace

SearchState evaluate_level(const PolylineCurve& curve, const Point& P, const Rational& tan_phi0,
                           const Rotation& rotation, unsigned level, unsigned workers) {
  SearchState state;
  state.level = level;
  double phi0 = std::atan(to_double(tan_phi0));
  state.phi_n = bisection_phi(phi0, level);
  state.sectors = fan_sectors(tan_phi0, rotation, level);
  Rational cap = diameter_cap(curve, P);
  state.cap_sq = cap * cap;
  state.rho.resize(state.sectors.size());
  state.states.resize(state.sectors.size());
  double width = (M_PI - 2 * phi0) / std::ldexp(1.0, static_cast<int>(level));
  for (std::size_t i = 0; i < state.sectors.size(); ++i) {
    state.rho[i] = bisection_rho(phi0, level, i);
    const Sector& s = state.sectors[i];
    double ideal_lo = phi0 + static_cast<double>(state.sectors.size() - i - 1) * width;
    state.angle_error = std::max({state.angle_error, std::abs(s.angle_lo - ideal_lo),
                                  std::abs(s.angle_hi - (ideal_lo + width))});
  }
  parallel_for(state.sectors.size(), workers,
               [&](std::size_t i) { state.states[i] = evaluate_sector(curve, P, state.sectors[i], state.cap_sq); });
  state.h_sq = state.cap_sq;
  for (const SectorState& st : state.states) {
    state.h_sq = std::min({state.h_sq, st.r_sq, st.d_sq, st.h_sq});
    state.upper_paths += st.path_upper ? 1 : 0;
    state.lower_paths += st.path_lower ? 1 : 0;
  }
  return state;
}

ViolationWitness construct_violation_witness(const PolylineCurve& curve, const Point& P, const SearchState& state,
                                             std::size_t k, const Rational& tan_phi0, const Rotation& rotation,
                                             std::optional<Rational> epsilon, OverlapPolicy policy) {
  std::size_t full = state.sectors.size();
  if (full < 2 * k + 3) throw PreconditionError("level too coarse: 2^n < 2k + 3");
  if (sgn(state.h_sq) <= 0) throw PreconditionError("level radius is zero (boundary contact)");
  Half half;
  if (state.upper_paths >= k + 2) half = Half::upper;
  else if (state.lower_paths >= k + 2) half = Half::lower;
  else throw PreconditionError("fewer than k + 2 path-carrying sectors on either half");

  const Sector& rightmost = state.sectors.back();
  Rational cr = cross(rightmost.right, rightmost.left);
  Rational sin_w_sq = cr * cr / (norm_sq(rightmost.right) * norm_sq(rightmost.left));
  Rational axis_sq = rotation.norm_sq();
  Rational width_bound_sq = state.h_sq * sin_w_sq / axis_sq;  // on epsilon^2

  Rational eps;
  if (epsilon) {
    eps = *epsilon;
    if (sgn(eps) <= 0 || eps * eps >= width_bound_sq)
      throw PreconditionError("epsilon must satisfy 0 < epsilon < h_n sin(pi - 2 phi_n)");
  } else {
    // Also keep the crossing inside B(P, h_n) near the left side of the cone.
    Rational sin2 = 2 * tan_phi0 / (1 + tan_phi0 * tan_phi0);
    Rational bound_sq = std::min(width_bound_sq, Rational(state.h_sq * sin2 * sin2 / axis_sq));
    eps = rational_sqrt_below(bound_sq) / 2;
  }

  Point axis = rotation.apply(Point{Rational(0), Rational(1)});
  Point shift = (half == Half::upper ? eps : Rational(-eps)) * axis;
  Line line = Line::with_direction(P + shift, rightmost.right);
  IntersectionReport report = line_curve_intersections(line, curve);
  bool verified = report.count_under(policy).exceeds(k);
  return {std::move(line), std::move(report), eps, half, verified};
}

AvoidanceTriple rationalize_triple(const AvoidanceTriple& triple, const PolylineCurve& curve, const Point& P) {
  if (!gamma_n_contains(curve, P, triple)) throw ZeroClearance("triple " + triple.str() + " meets the curve away from P");
  return triple;
}

AvoidanceTriple rationalize_triple(const Sector& sector, const Rational& h, const PolylineCurve& curve,
                                   const Point& P) {
  if (!curve.contains(P)) throw NotOnCurve("point " + to_string(P) + " is not on the curve");
  if (sgn(h) <= 0) throw DomainError("h must be positive");
  Wedge w{P, sector.right, sector.left};
  ComponentSet set = components_in_wedge(curve, w);
  Rational h_sq = h * h;
  for (std::size_t c = 0; c < set.components.size(); ++c) {
    const Component& comp = set.components[c];
    if (set.vertex_component && c == *set.vertex_component) {
      if (!comp.trivial()) throw ZeroClearance("the curve leaves P inside the sector");
      continue;
    }
    for (const ClipPiece& pc : comp.pieces) {
      if (seg_dist_sq(P, pc.from, pc.to) <= h_sq) throw ZeroClearance("the sector meets the curve within h");
    }
  }

  long double a1 = std::atan2(static_cast<long double>(to_double(sector.right.y)),
                              static_cast<long double>(to_double(sector.right.x)));
  long double a2 = std::atan2(static_cast<long double>(to_double(sector.left.y)),
                              static_cast<long double>(to_double(sector.left.x)));
  if (a2 < a1) a2 += 2 * M_PIl;
  long double mid = (a1 + a2) / 2, half_width = (a2 - a1) / 2;
  Point axis{from_long_double(std::cos(mid)), from_long_double(std::sin(mid))};
  // Axis R(0, 1) = (-s, c).
  Rotation rot = Rotation::from_vector(axis.y, -axis.x);
  Rational T = from_long_double(1.25L / std::tan(half_width));
  if (sgn(T) <= 0) T = 1;
  for (int attempt = 0; attempt < 200; ++attempt, T *= 2) {
    Point r = rot.apply(Point{Rational(1), T});
    Point l = rot.apply(Point{Rational(-1), T});
    bool inside = w.half_of(r) == 1 && w.half_of(l) == 1 && sgn(cross(r, l)) > 0;
    if (!inside) continue;
    AvoidanceTriple t{T, rot, h};
    if (!gamma_n_contains(curve, P, t)) throw ZeroClearance("rational cone inside the sector meets the curve");
    return t;
  }
  throw ZeroClearance("no rational cone found inside the sector");
}

ConeSearchResult find_avoiding_cone(const PolylineCurve& curve, const Point& P, const Rational& tan_phi0,
                                    std::size_t k, const ConeSearchOptions& options) {
  if (!curve.contains(P)) throw NotOnCurve("point " + to_string(P) + " is not on the curve");
  if (sgn(tan_phi0) <= 0) throw DomainError("tan(phi0) must be positive");
  unsigned n0 = threshold_level(k);
  unsigned last = std::max(n0, options.max_depth);
  if (last > kMaxLevel) throw DomainError("search depth above " + std::to_string(kMaxLevel));

  ConeSearchResult res;
  for (unsigned n = 0; n <= last; ++n) {
    SearchState state = evaluate_level(curve, P, tan_phi0, options.rotation, n, options.workers);
    res.trace.push_back(state);
    const SearchState& st = res.trace.back();
    for (std::size_t i = 0; i < st.states.size(); ++i) {
      const SectorState& ss = st.states[i];
      if (!ss.avoided_untruncated && !ss.avoided_truncated) continue;
      Rational h = ss.avoided_untruncated ? diameter_cap(curve, P) : rational_sqrt_below(ss.h_sq);
      try {
        AvoidanceTriple t = n == 0 ? rationalize_triple(AvoidanceTriple{tan_phi0, options.rotation, h}, curve, P)
                                   : rationalize_triple(st.sectors[i], h, curve, P);
        res.outcome = SearchOutcome::found;
        res.triple = t;
        res.level = n;
        res.sector = i;
        return res;
      } catch (const ZeroClearance& e) {
        res.diagnostics.push_back("level " + std::to_string(n) + " sector " + std::to_string(i) + ": " + e.what());
      }
    }
    if (n < n0) continue;
    if (sgn(st.h_sq) <= 0) {
      res.diagnostics.push_back("level " + std::to_string(n) + ": boundary contact, radius is zero");
      continue;
    }
    if (st.upper_paths < k + 2 && st.lower_paths < k + 2) continue;
    ViolationWitness w =
        construct_violation_witness(curve, P, st, k, tan_phi0, options.rotation, std::nullopt, options.policy);
    if (w.verified) {
      res.outcome = SearchOutcome::violation;
      res.level = n;
      res.witness = std::move(w);
      return res;
    }
    res.diagnostics.push_back("level " + std::to_string(n) + ": witness line " + w.line.str() + " meets the curve in " +
                              w.report.count_under(options.policy).str() + " points only");
  }
  res.outcome = SearchOutcome::exhausted;
  res.level = last;
  res.diagnostics.push_back("no avoiding sector up to level " + std::to_string(last) +
                            " (boundary angle error below " + std::to_string(res.trace.back().angle_error) + ")");
  return res;
}

PolylineCurve spoke_violator(const Point& P, const Rational& tan_phi0, std::size_t k, const Rational& length,
                             const Rotation& rotation) {
  if (sgn(length) <= 0) throw DomainError("spoke length must be positive");
  std::vector<Sector> fan = fan_sectors(tan_phi0, rotation, threshold_level(k));
  std::vector<Point> pts{P};
  for (const Sector& s : fan) {
    Point d = (1 / l1(s.right)) * s.right + (1 / l1(s.left)) * s.left;
    d = (length / l1(d)) * d;
    pts.push_back(s.index < k + 2 ? P + d : P - d);
    pts.push_back(P);
  }
  return PolylineCurve(std::move(pts));
}

}  // namespace conecurve
