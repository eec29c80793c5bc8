#include "conecurve/intersection.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>
#include <variant>

#include "conecurve/errors.hpp"

namespace conecurve {

IntersectionCount IntersectionReport::count_under(OverlapPolicy policy) const {
  if (overlap && policy == OverlapPolicy::strict) return IntersectionCount::unbounded();
  return {points.size(), false};
}

IntersectionReport line_curve_intersections(const Line& line, const PolylineCurve& curve) {
  const Point d = line.direction();
  const Point& a = line.anchor();
  const auto& pts = curve.points();
  std::vector<Rational> o(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) o[i] = cross(d, pts[i] - a);

  IntersectionReport rep;
  std::vector<Point> hits;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (sgn(o[i]) == 0) hits.push_back(pts[i]);
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    int s0 = sgn(o[i]);
    int s1 = sgn(o[i + 1]);
    if (s0 == 0 && s1 == 0) rep.overlap = true;
    if (s0 * s1 < 0) {
      Rational t = o[i] / (o[i] - o[i + 1]);
      hits.push_back(pts[i] + t * (pts[i + 1] - pts[i]));
    }
  }
  std::vector<std::pair<Rational, Point>> keyed;
  keyed.reserve(hits.size());
  for (auto& p : hits) keyed.emplace_back(dot(d, p - a), std::move(p));
  std::sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  for (auto& [t, p] : keyed) {
    if (rep.points.empty() || !(rep.points.back() == p)) rep.points.push_back(std::move(p));
  }
  rep.count = rep.overlap ? IntersectionCount::unbounded() : IntersectionCount{rep.points.size(), false};
  return rep;
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = sgn(cross(b - a, c - a));
  int o2 = sgn(cross(b - a, d - a));
  int o3 = sgn(cross(d - c, a - c));
  int o4 = sgn(cross(d - c, b - c));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && point_on_segment(c, a, b)) return true;
  if (o2 == 0 && point_on_segment(d, a, b)) return true;
  if (o3 == 0 && point_on_segment(a, c, d)) return true;
  if (o4 == 0 && point_on_segment(b, c, d)) return true;
  return false;
}

bool is_simple(const PolylineCurve& curve) {
  const auto& p = curve.points();
  const std::size_t segs = curve.segment_count();
  const bool closed = p.front() == p.back() && segs >= 3;
  for (std::size_t i = 0; i + 1 < segs; ++i) {
    // adjacent segments may only share their joint
    Point u = p[i] - p[i + 1];
    Point v = p[i + 2] - p[i + 1];
    if (sgn(cross(u, v)) == 0 && sgn(dot(u, v)) > 0) return false;
  }
  for (std::size_t i = 0; i < segs; ++i) {
    for (std::size_t j = i + 2; j < segs; ++j) {
      if (!segments_intersect(p[i], p[i + 1], p[j], p[j + 1])) continue;
      if (closed && i == 0 && j == segs - 1) {
        // first and last segment meet at the closing point only
        Point u = p[1] - p[0];
        Point v = p[segs - 1] - p[0];
        if (sgn(cross(u, v)) == 0 && sgn(dot(u, v)) > 0) return false;
        continue;
      }
      return false;
    }
  }
  return true;
}

namespace {

// ---------------------------------------------------------------------------
// Cells around a line through two or more breakpoints.
//
// The breakpoints on the base line are grouped by their position along it.
// Nearby generic lines are either parallel shifts (all on-line breakpoints go
// to one side) or small turns about a pivot between two consecutive groups.

enum PatternCode : int { kExact = 0, kShiftLeft = 1, kShiftRight = 2, kTurnBase = 3 };

int turn_code(std::size_t cut, int sense) { return kTurnBase + 2 * static_cast<int>(cut) + (sense > 0 ? 0 : 1); }

struct OnLineGroups {
  std::vector<Rational> positions;  // distinct, increasing dot(d, v - anchor)
};

OnLineGroups on_line_groups(const std::vector<Point>& pts, const Point& anchor, const Point& d) {
  OnLineGroups g;
  for (const Point& v : pts) {
    if (sgn(cross(d, v - anchor)) == 0) g.positions.push_back(dot(d, v - anchor));
  }
  std::sort(g.positions.begin(), g.positions.end());
  g.positions.erase(std::unique(g.positions.begin(), g.positions.end()), g.positions.end());
  return g;
}

// Builds an explicit line in the cell described by `code`, preserving the
// side of every breakpoint off the base line.
Line realize_pattern(const PolylineCurve& curve, const PlanarCone& cone, const Point& anchor, const Point& d,
                     int code) {
  const auto& pts = curve.points();
  if (code == kExact) return Line::with_direction(anchor, d);
  Rational min_abs = -1;
  Rational max_dot = 0;
  for (const Point& v : pts) {
    Rational o = abs_value(cross(d, v - anchor));
    if (sgn(o) > 0 && (sgn(min_abs) < 0 || o < min_abs)) min_abs = o;
  }
  if (sgn(min_abs) < 0) min_abs = norm_sq(d);
  if (code == kShiftLeft || code == kShiftRight) {
    // orient(v) changes by s * eps * |d|^2
    Rational eps = min_abs / (2 * norm_sq(d));
    int s = code == kShiftLeft ? 1 : -1;
    Point shifted = anchor - Rational(s * eps) * perp(d);
    return Line::with_direction(shifted, d);
  }
  const int rel = code - kTurnBase;
  const std::size_t cut = static_cast<std::size_t>(rel / 2);
  const int sense = (rel % 2 == 0) ? 1 : -1;
  OnLineGroups groups = on_line_groups(pts, anchor, d);
  if (cut + 1 >= groups.positions.size()) throw std::logic_error("turn pattern without a cut");
  Rational tau = (groups.positions[cut] + groups.positions[cut + 1]) / 2;
  Point pivot = anchor + Rational(tau / norm_sq(d)) * d;
  for (const Point& v : pts) max_dot = std::max(max_dot, abs_value(dot(d, v - pivot)));
  if (sgn(max_dot) == 0) max_dot = 1;
  Rational eta = min_abs / (2 * max_dot);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Point turned = d + Rational(sense * eta) * perp(d);
    if (cone.contains_direction(turned)) return Line::with_direction(pivot, turned);
    eta /= 2;
  }
  throw std::logic_error("could not realize an admissible turned line");
}

struct Key {
  Slope slope = Slope::vertical();
  Rational offset;
  int origin_kind = 0;  // 0 pair pattern, 1 extreme-direction sweep
  std::size_t i = 0, j = 0;
  int code = 0;

  friend bool less(const Key& a, const Key& b) {
    if (auto c = a.slope <=> b.slope; c != 0) return c < 0;
    if (a.offset != b.offset) return a.offset < b.offset;
    if (a.origin_kind != b.origin_kind) return a.origin_kind < b.origin_kind;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.code < b.code;
  }
};

struct Best {
  bool set = false;
  IntersectionCount count;
  Key key;
  std::optional<Line> sweep_line;  // explicit line for sweep origins
  bool overlap_seen = false;
  std::size_t evaluated = 0;

  void offer(const IntersectionCount& c, const std::function<Key()>& make_key, std::optional<Line> line = {}) {
    if (set && c < count) return;
    Key k = make_key();
    if (set && c == count && !less(k, key)) return;
    set = true;
    count = c;
    key = std::move(k);
    sweep_line = std::move(line);
  }

  void merge(const Best& other) {
    overlap_seen = overlap_seen || other.overlap_seen;
    evaluated += other.evaluated;
    if (!other.set) return;
    if (!set || other.count > count || (other.count == count && less(other.key, key))) {
      set = true;
      count = other.count;
      key = other.key;
      sweep_line = other.sweep_line;
    }
  }
};

Key pair_key(const PolylineCurve& curve, std::size_t i, std::size_t j, int code) {
  Line base = Line::through(curve[i], curve[j]);
  return Key{base.slope(), base.offset(), 0, i, j, code};
}

// Point identities for breakpoints that repeat a coordinate pair.
std::vector<std::size_t> point_ids(const PolylineCurve& curve) {
  std::map<Point, std::size_t> seen;
  std::vector<std::size_t> ids(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    auto [it, inserted] = seen.emplace(curve[i], i);
    ids[i] = it->second;
  }
  return ids;
}

// Lines with an extreme (cone boundary) direction: through every breakpoint
// and between consecutive breakpoint offsets.
template <class Visit>
void for_each_extreme_line(const PolylineCurve& curve, const PlanarCone& cone, Visit&& visit) {
  const auto& pts = curve.points();
  for (const Point& b : {cone.right_boundary(), cone.left_boundary()}) {
    std::vector<Rational> offs(pts.size());
    for (std::size_t m = 0; m < pts.size(); ++m) offs[m] = cross(b, pts[m]);
    std::vector<std::size_t> order(pts.size());
    for (std::size_t m = 0; m < order.size(); ++m) order[m] = m;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return offs[l] < offs[r]; });
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
      std::size_t m = order[idx];
      if (idx > 0 && offs[order[idx - 1]] == offs[m]) continue;
      visit(Line::with_direction(pts[m], b), b, offs[m]);
      if (idx + 1 < order.size()) {
        std::size_t n = order[idx + 1];
        if (offs[n] == offs[m]) {
          // skip to the next distinct offset
          std::size_t q = idx + 1;
          while (q < order.size() && offs[order[q]] == offs[m]) ++q;
          if (q == order.size()) continue;
          n = order[q];
        }
        Rational mid = (offs[m] + offs[n]) / 2;
        Point anchor = pts[m] + Rational((mid - offs[m]) / norm_sq(b)) * perp(b);
        visit(Line::with_direction(anchor, b), b, mid);
      }
    }
  }
}

IntersectionCount sweep_count(const std::vector<std::size_t>& ids,
                             const std::vector<Rational>& offs, const Rational& c, OverlapPolicy policy,
                             bool* overlap) {
  std::size_t crossings = 0;
  std::vector<std::size_t> on;
  bool ov = false;
  for (std::size_t m = 0; m < offs.size(); ++m) {
    if (offs[m] == c) on.push_back(ids[m]);
    if (m + 1 < offs.size()) {
      const Rational& u = offs[m];
      const Rational& v = offs[m + 1];
      if ((u < c && c < v) || (v < c && c < u)) ++crossings;
      if (u == c && v == c) ov = true;
    }
  }
  std::sort(on.begin(), on.end());
  on.erase(std::unique(on.begin(), on.end()), on.end());
  if (overlap) *overlap = ov;
  if (ov && policy == OverlapPolicy::strict) return IntersectionCount::unbounded();
  return {crossings + on.size(), false};
}

void run_extreme_sweep(const PolylineCurve& curve, const PlanarCone& cone, OverlapPolicy policy, Best& best) {
  const auto ids = point_ids(curve);
  const auto& pts = curve.points();
  Point current_dir;
  std::vector<Rational> offs;
  for_each_extreme_line(curve, cone, [&](const Line& line, const Point& b, const Rational& c) {
    if (offs.empty() || !(current_dir == b)) {
      current_dir = b;
      offs.assign(pts.size(), Rational(0));
      for (std::size_t m = 0; m < pts.size(); ++m) offs[m] = cross(b, pts[m]);
    }
    bool ov = false;
    IntersectionCount cnt = sweep_count(ids, offs, c, policy, &ov);
    best.overlap_seen = best.overlap_seen || ov;
    ++best.evaluated;
    best.offer(cnt, [&] { return Key{line.slope(), line.offset(), 1, 0, 0, 0}; }, line);
  });
}

// ---------------------------------------------------------------------------
// Exact integer kernel for simple curves.

namespace bmp = boost::multiprecision;
using Int256 = bmp::int256_t;

template <class Int>
Int to_int(const Integer& z);

template <>
__int128 to_int<__int128>(const Integer& z) {
  Integer a = abs(z);
  unsigned long long words[2] = {0, 0};
  size_t count = 0;
  mpz_export(words, &count, -1, sizeof(unsigned long long), 0, 0, a.get_mpz_t());
  unsigned __int128 u = (static_cast<unsigned __int128>(words[1]) << 64) | words[0];
  __int128 v = static_cast<__int128>(u);
  return sgn(z) < 0 ? -v : v;
}

template <>
Int256 to_int<Int256>(const Integer& z) {
  return Int256(z.get_str());
}

template <>
Integer to_int<Integer>(const Integer& z) {
  return z;
}

template <class Int>
int sign_of(const Int& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

template <class Int>
class PairKernel {
 public:
  PairKernel(const PolylineCurve& curve, const PlanarCone& cone, OverlapPolicy policy, const Integer& coord_scale,
             const Integer& cone_scale)
      : curve_(curve), cone_(cone), policy_(policy), ids_(point_ids(curve)) {
    const auto& pts = curve.points();
    X_.reserve(pts.size());
    Y_.reserve(pts.size());
    for (const Point& p : pts) {
      X_.push_back(to_int<Int>(Integer(p.x * coord_scale)));
      Y_.push_back(to_int<Int>(Integer(p.y * coord_scale)));
    }
    const Rotation& r = cone.rotation();
    C_ = to_int<Int>(Integer(r.c() * cone_scale));
    S_ = to_int<Int>(Integer(r.s() * cone_scale));
    Tn_ = to_int<Int>(cone.tan_phi().get_num());
    Td_ = to_int<Int>(cone.tan_phi().get_den());
  }

  // Rows i with i % stride == offset.
  void run(std::size_t offset, std::size_t stride, Best& best) const {
    const std::size_t n = X_.size();
    std::vector<Int> DX(n), DY(n);
    std::vector<int> sg(n);
    std::vector<std::size_t> zeros;
    std::vector<std::size_t> affected;
    std::vector<std::pair<Int, std::size_t>> zpos;
    std::vector<int> assigned(n);
    for (std::size_t i = offset; i < n; i += stride) {
      for (std::size_t m = 0; m < n; ++m) {
        DX[m] = X_[m] - X_[i];
        DY[m] = Y_[m] - Y_[i];
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        const Int& dx = DX[j];
        const Int& dy = DY[j];
        if (sign_of(dx) == 0 && sign_of(dy) == 0) continue;
        int cls = direction_class(dx, dy);
        if (cls < 0) continue;
        zeros.clear();
        for (std::size_t m = 0; m < n; ++m) {
          Int o = dx * DY[m] - dy * DX[m];
          sg[m] = sign_of(o);
          if (sg[m] == 0) zeros.push_back(m);
        }
        std::size_t base_cross = 0;
        bool overlap = false;
        affected.clear();
        for (std::size_t m = 0; m + 1 < n; ++m) {
          int a = sg[m];
          int b = sg[m + 1];
          if (a == 0 || b == 0) {
            affected.push_back(m);
            if (a == 0 && b == 0) overlap = true;
          } else if (a != b) {
            ++base_cross;
          }
        }
        ++best.evaluated;
        best.overlap_seen = best.overlap_seen || overlap;

        // exact line through the pair
        std::size_t distinct_on = count_distinct(zeros);
        IntersectionCount exact = (overlap && policy_ == OverlapPolicy::strict)
                                      ? IntersectionCount::unbounded()
                                      : IntersectionCount{base_cross + distinct_on, false};
        offer(best, exact, i, j, kExact);

        // upper bound for every generic neighbour
        IntersectionCount bound{base_cross + affected.size(), false};
        if (best.set && bound < best.count) continue;

        auto pattern_count = [&]() {
          std::size_t c = base_cross;
          for (std::size_t m : affected) {
            if (assigned[m] * assigned[m + 1] < 0) ++c;
          }
          return IntersectionCount{c, false};
        };
        for (std::size_t m = 0; m < n; ++m) assigned[m] = sg[m];
        for (std::size_t z : zeros) assigned[z] = 1;
        offer(best, pattern_count(), i, j, kShiftLeft);
        for (std::size_t z : zeros) assigned[z] = -1;
        offer(best, pattern_count(), i, j, kShiftRight);

        zpos.clear();
        for (std::size_t z : zeros) zpos.emplace_back(dx * DX[z] + dy * DY[z], z);
        std::sort(zpos.begin(), zpos.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        std::vector<std::size_t> group_start;
        for (std::size_t q = 0; q < zpos.size(); ++q) {
          if (q == 0 || zpos[q].first != zpos[q - 1].first) group_start.push_back(q);
        }
        if (group_start.size() < 2) continue;
        bool ccw_ok = true;
        bool cw_ok = true;
        if (cls == 0) {
          Point d = curve_[j] - curve_[i];
          ccw_ok = direction_admissible_after_turn(cone_, d, 1);
          cw_ok = direction_admissible_after_turn(cone_, d, -1);
        }
        for (std::size_t cut = 0; cut + 1 < group_start.size(); ++cut) {
          std::size_t split = group_start[cut + 1];
          // counter-clockwise: before the pivot -> left, after -> right
          if (ccw_ok) {
            for (std::size_t q = 0; q < zpos.size(); ++q) assigned[zpos[q].second] = q < split ? 1 : -1;
            offer(best, pattern_count(), i, j, turn_code(cut, 1));
          }
          if (cw_ok) {
            for (std::size_t q = 0; q < zpos.size(); ++q) assigned[zpos[q].second] = q < split ? -1 : 1;
            offer(best, pattern_count(), i, j, turn_code(cut, -1));
          }
        }
      }
    }
  }

 private:
  int direction_class(const Int& dx, const Int& dy) const {
    Int lx = C_ * dx + S_ * dy;
    Int ly = C_ * dy - S_ * dx;
    if (lx < 0) lx = -lx;
    if (ly < 0) ly = -ly;
    Int diff = Td_ * ly - Tn_ * lx;
    return sign_of(diff);
  }

  std::size_t count_distinct(const std::vector<std::size_t>& zeros) const {
    if (zeros.size() <= 1) return zeros.size();
    std::vector<std::size_t> v;
    v.reserve(zeros.size());
    for (std::size_t z : zeros) v.push_back(ids_[z]);
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  }

  void offer(Best& best, const IntersectionCount& c, std::size_t i, std::size_t j, int code) const {
    if (best.set && c < best.count) return;
    best.offer(c, [&] { return pair_key(curve_, i, j, code); });
  }

  const PolylineCurve& curve_;
  const PlanarCone& cone_;
  OverlapPolicy policy_;
  std::vector<std::size_t> ids_;
  std::vector<Int> X_, Y_;
  Int C_, S_, Tn_, Td_;
};

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const Rational& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  return l;
}

std::size_t bits_of(const Integer& z) { return sgn(z) == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2); }

template <class Int>
Best run_kernel(const PolylineCurve& curve, const PlanarCone& cone, OverlapPolicy policy, const Integer& coord_scale,
                const Integer& cone_scale, unsigned workers) {
  PairKernel<Int> kernel(curve, cone, policy, coord_scale, cone_scale);
  workers = std::max(1u, workers);
  std::vector<Best> partial(workers);
  if (workers == 1) {
    kernel.run(0, 1, partial[0]);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] { kernel.run(w, workers, partial[w]); });
    }
    for (auto& t : threads) t.join();
  }
  Best out;
  for (const Best& b : partial) out.merge(b);
  return out;
}

Best run_pair_search(const PolylineCurve& curve, const PlanarCone& cone, OverlapPolicy policy, unsigned workers) {
  std::vector<Rational> coords;
  coords.reserve(2 * curve.size());
  for (const Point& p : curve.points()) {
    coords.push_back(p.x);
    coords.push_back(p.y);
  }
  Integer coord_scale = lcm_of_denominators(coords);
  Integer cone_scale = lcm_of_denominators({cone.rotation().c(), cone.rotation().s()});
  std::size_t coord_bits = 0;
  for (const Rational& v : coords) coord_bits = std::max(coord_bits, bits_of(Integer(v * coord_scale)));
  std::size_t rot_bits = std::max(bits_of(Integer(cone.rotation().c() * cone_scale)),
                                  bits_of(Integer(cone.rotation().s() * cone_scale)));
  std::size_t tan_bits = std::max(bits_of(cone.tan_phi().get_num()), bits_of(cone.tan_phi().get_den()));
  // products of two coordinate differences, and difference * rotation * tangent
  std::size_t need = std::max(2 * (coord_bits + 1) + 2, (coord_bits + 1) + rot_bits + tan_bits + 4);
  if (need <= 126) return run_kernel<__int128>(curve, cone, policy, coord_scale, cone_scale, workers);
  if (need <= 254) return run_kernel<Int256>(curve, cone, policy, coord_scale, cone_scale, workers);
  return run_kernel<Integer>(curve, cone, policy, coord_scale, cone_scale, workers);
}

void append_pair_lines(const PolylineCurve& curve, const PlanarCone& cone, std::vector<Line>& out) {
  const auto& pts = curve.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Point d = pts[j] - pts[i];
      if (sgn(d.x) == 0 && sgn(d.y) == 0) continue;
      int cls = cone.direction_class(d);
      if (cls < 0) continue;
      out.push_back(Line::with_direction(pts[i], d));
      out.push_back(realize_pattern(curve, cone, pts[i], d, kShiftLeft));
      out.push_back(realize_pattern(curve, cone, pts[i], d, kShiftRight));
      OnLineGroups groups = on_line_groups(pts, pts[i], d);
      bool ccw_ok = cls > 0 || direction_admissible_after_turn(cone, d, 1);
      bool cw_ok = cls > 0 || direction_admissible_after_turn(cone, d, -1);
      for (std::size_t cut = 0; cut + 1 < groups.positions.size(); ++cut) {
        if (ccw_ok) out.push_back(realize_pattern(curve, cone, pts[i], d, turn_code(cut, 1)));
        if (cw_ok) out.push_back(realize_pattern(curve, cone, pts[i], d, turn_code(cut, -1)));
      }
    }
  }
}

bool line_less(const Line& a, const Line& b) {
  if (auto c = a.slope() <=> b.slope(); c != 0) return c < 0;
  return a.offset() < b.offset();
}

}  // namespace

std::vector<Line> enumerate_critical_lines(const PolylineCurve& curve, const PlanarCone& cone) {
  std::vector<Line> out;
  append_pair_lines(curve, cone, out);
  for_each_extreme_line(curve, cone, [&](const Line& line, const Point&, const Rational&) { out.push_back(line); });
  std::sort(out.begin(), out.end(), line_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IntersectionCount max_over_critical_lines(const PolylineCurve& curve, const PlanarCone& cone, OverlapPolicy policy) {
  IntersectionCount best;
  for (const Line& l : enumerate_critical_lines(curve, cone)) {
    IntersectionCount c = line_curve_intersections(l, curve).count_under(policy);
    if (c > best) best = c;
  }
  return best;
}

AdmissibilityVerdict max_intersections_over_cone(const PolylineCurve& curve, const PlanarCone& cone, std::size_t k,
                                                 const SearchOptions& options) {
  const PlanarCone dirs = cone.untruncated();
  AdmissibilityVerdict v;
  v.k = k;
  v.policy = options.policy;

  std::optional<Line> best_line;
  if (is_simple(curve)) {
    Best best = run_pair_search(curve, dirs, options.policy, options.workers);
    run_extreme_sweep(curve, dirs, options.policy, best);
    v.candidates_evaluated = best.evaluated;
    v.overlap_seen = best.overlap_seen;
    v.max_count = best.count;
    if (best.key.origin_kind == 1) {
      best_line = best.sweep_line;
    } else {
      const Point& a = curve[best.key.i];
      Point d = curve[best.key.j] - a;
      best_line = realize_pattern(curve, dirs, a, d, best.key.code);
    }
    IntersectionCount recount = line_curve_intersections(*best_line, curve).count_under(options.policy);
    if (!(recount == best.count)) {
      throw std::logic_error("intersection kernel disagrees with the exact recount of its maximizer");
    }
  } else {
    std::vector<Line> lines = enumerate_critical_lines(curve, dirs);
    v.candidates_evaluated = lines.size();
    for (const Line& l : lines) {
      IntersectionReport rep = line_curve_intersections(l, curve);
      v.overlap_seen = v.overlap_seen || rep.overlap;
      IntersectionCount c = rep.count_under(options.policy);
      if (!best_line || c > v.max_count) {
        v.max_count = c;
        best_line = l;
      }
    }
  }

  v.ok = !v.max_count.exceeds(k);
  if (!v.ok && best_line) {
    v.witness = best_line;
    v.witness_report = line_curve_intersections(*best_line, curve);
    v.witness_on_boundary = dirs.direction_class(best_line->direction()) == 0;
  }
  if (sgn(curve.model_error()) > 0) {
    v.resolution_caveat = "curve samples an analytic function; breakpoints carry absolute error below " +
                          to_string(curve.model_error());
  }
  if (options.policy == OverlapPolicy::chord) {
    std::string note = "segments are treated as chords: lines containing a segment count its breakpoints only";
    v.resolution_caveat = v.resolution_caveat ? *v.resolution_caveat + "; " + note : note;
  }
  return v;
}

AdmissibilityVerdict check_admissible_k(const PolylineCurve& curve, const Rational& tan_phi, const Rotation& rotation,
                                        std::size_t k, const SearchOptions& options) {
  PlanarCone cone(Point{Rational(0), Rational(0)}, tan_phi, rotation);
  return max_intersections_over_cone(curve, cone, k, options);
}

}  // namespace conecurve
