#include "conecurve/structure.hpp"

#include <algorithm>

#include "conecurve/errors.hpp"

namespace conecurve {

namespace {

Rational segment_slope(const PolylineCurve& c, std::size_t i) {
  return (c[i + 1].y - c[i].y) / (c[i + 1].x - c[i].x);
}

std::vector<Rational> all_slopes(const PolylineCurve& c) {
  std::vector<Rational> s(c.segment_count());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = segment_slope(c, i);
  return s;
}

// Slack on a segment slope caused by breakpoint snapping.
Rational slope_slack(const PolylineCurve& c, std::size_t i) {
  if (sgn(c.model_error()) == 0) return 0;
  return 2 * c.model_error() / (c[i + 1].x - c[i].x);
}

bool monotone_pair(const PolylineCurve& c, const std::vector<Rational>& s, std::size_t i, Orientation o) {
  Rational slack = slope_slack(c, i) + slope_slack(c, i + 1);
  return o == Orientation::convex ? s[i + 1] >= s[i] - slack : s[i + 1] <= s[i] + slack;
}

// Number of segments in the longest prefix (forward) or suffix (backward)
// that is convex, resp. concave.
std::size_t run_length(const PolylineCurve& c, const std::vector<Rational>& s, Orientation o, bool forward) {
  const std::size_t n = s.size();
  std::size_t len = 1;
  if (forward) {
    while (len < n && monotone_pair(c, s, len - 1, o)) ++len;
  } else {
    while (len < n && monotone_pair(c, s, n - 1 - len, o)) ++len;
  }
  return len;
}

bool steep(const Rational& s, const Rational& lo, const Rational& hi) { return s >= hi || s <= lo; }

Region make_region(const PolylineCurve& c, const std::vector<Rational>& s, std::size_t seg_lo, std::size_t seg_hi,
                   RegionClass cls) {
  Region r;
  r.lo = c[seg_lo].x;
  r.hi = c[seg_hi].x;
  r.cls = cls;
  r.constant = -1;
  for (std::size_t i = seg_lo; i < seg_hi; ++i) {
    Rational a = abs_value(s[i]);
    if (a > r.constant) {
      r.constant = a;
      r.witness_i = i;
      r.witness_j = i + 1;
    }
  }
  return r;
}

RegionClass from_orientation(Orientation o) { return o == Orientation::convex ? RegionClass::convex : RegionClass::concave; }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "?";
}

std::string to_string(Orientation o) { return o == Orientation::convex ? "convex" : "concave"; }

std::string to_string(RegionClass c) {
  switch (c) {
    case RegionClass::concave: return "concave";
    case RegionClass::convex: return "convex";
    case RegionClass::lipschitz: return "lipschitz";
  }
  return "?";
}

LipschitzProfile lipschitz_constant(const PolylineCurve& curve, const Rational& lo, const Rational& hi) {
  PolylineCurve r = restrict_x(curve, lo, hi);
  LipschitzProfile p;
  p.lo = r.x_min();
  p.hi = r.x_max();
  Rational best = -1;
  for (std::size_t i = 0; i < r.segment_count(); ++i) {
    Rational a = abs_value(segment_slope(r, i));
    if (a > best) {
      best = a;
      p.segment = i;
    }
  }
  p.constant = best;
  p.seg_start = r[p.segment];
  p.seg_end = r[p.segment + 1];
  return p;
}

LipschitzProfile lipschitz_constant(const PolylineCurve& curve) {
  curve.require_function_graph();
  return lipschitz_constant(curve, curve.x_min(), curve.x_max());
}

SlopeExtremes slope_extremes(const PolylineCurve& curve) {
  curve.require_function_graph();
  auto s = all_slopes(curve);
  SlopeExtremes e;
  e.min_slope = e.max_slope = s[0];
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < e.min_slope) {
      e.min_slope = s[i];
      e.min_i = i;
      e.min_j = i + 1;
    }
    if (s[i] > e.max_slope) {
      e.max_slope = s[i];
      e.max_i = i;
      e.max_j = i + 1;
    }
  }
  return e;
}

MonotoneCheck unique_local_min_monotone(const PolylineCurve& curve) {
  curve.require_function_graph();
  const auto& p = curve.points();
  const std::size_t n = p.size();
  MonotoneCheck out;
  // local minima are maximal runs of equal values not adjacent to a lower value
  std::size_t first_min = 0;
  for (std::size_t a = 0; a < n;) {
    std::size_t b = a;
    while (b + 1 < n && p[b + 1].y == p[a].y) ++b;
    bool left_ok = a == 0 || p[a - 1].y > p[a].y;
    bool right_ok = b + 1 == n || p[b + 1].y > p[b].y;
    if (left_ok && right_ok) {
      if (out.local_minima == 0) first_min = a;
      ++out.local_minima;
    }
    a = b + 1;
  }
  if (out.local_minima != 1) return out;
  out.min_x = p[first_min].x;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    bool before = i < first_min;
    bool strict = before ? p[i + 1].y < p[i].y : p[i + 1].y > p[i].y;
    if (!strict) {
      out.verdict = Verdict::fail;
      out.violation = std::make_pair(i, i + 1);
      return out;
    }
  }
  out.verdict = Verdict::pass;
  return out;
}

ConvexityCheck is_convex_on(const PolylineCurve& curve, const Rational& lo, const Rational& hi, Orientation o) {
  PolylineCurve r = restrict_x(curve, lo, hi);
  auto s = all_slopes(r);
  ConvexityCheck out;
  out.tolerance_used = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    Rational slack = slope_slack(r, i) + slope_slack(r, i + 1);
    out.tolerance_used = std::max(out.tolerance_used, slack);
    if (!monotone_pair(r, s, i, o)) {
      out.holds = false;
      out.witness = std::array<Point, 3>{r[i], r[i + 1], r[i + 2]};
      return out;
    }
  }
  return out;
}

ConvexityCheck is_convex_on(const PolylineCurve& curve, Orientation o) {
  curve.require_function_graph();
  return is_convex_on(curve, curve.x_min(), curve.x_max(), o);
}

ConvexityDecomposition detect_decomposition(const PolylineCurve& curve, const Rational& lambda) {
  if (sgn(lambda) <= 0) throw DomainError("lambda must be positive");
  return detect_decomposition(curve, -lambda, lambda);
}

ConvexityDecomposition detect_decomposition(const PolylineCurve& curve, const Rational& lo, const Rational& hi) {
  curve.require_function_graph();
  if (!(sgn(lo) < 0 && sgn(hi) > 0)) throw DomainError("slope bounds must satisfy lo < 0 < hi");
  ConvexityDecomposition d;
  d.lambda_lo = lo;
  d.lambda_hi = hi;
  auto s = all_slopes(curve);
  const std::size_t n = s.size();

  bool any_steep = false;
  for (const Rational& v : s) any_steep = any_steep || steep(v, lo, hi);
  if (!any_steep) {
    d.regions.push_back(make_region(curve, s, 0, n, RegionClass::lipschitz));
    return d;
  }

  auto pick = [&](bool forward, Orientation& o) {
    std::size_t cv = run_length(curve, s, Orientation::convex, forward);
    std::size_t cc = run_length(curve, s, Orientation::concave, forward);
    o = cv >= cc ? Orientation::convex : Orientation::concave;
    return std::max(cv, cc);
  };
  Orientation head_o, tail_o;
  std::size_t head_len = pick(true, head_o);
  std::size_t tail_len = pick(false, tail_o);
  auto has_steep = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = a; i < b; ++i) {
      if (steep(s[i], lo, hi)) return true;
    }
    return false;
  };
  // segment index ranges: head [0, head_end), tail [tail_start, n)
  std::size_t head_end = has_steep(0, head_len) ? head_len : 0;
  std::size_t tail_start = has_steep(n - tail_len, n) ? n - tail_len : n;

  if (head_end == n) {
    d.x_bar = d.y_bar = curve.x_max();
    d.regions.push_back(make_region(curve, s, 0, n, from_orientation(head_o)));
    return d;
  }
  if (tail_start == 0) {
    d.x_bar = d.y_bar = curve.x_min();
    d.regions.push_back(make_region(curve, s, 0, n, from_orientation(tail_o)));
    return d;
  }
  if (head_end > 0 && tail_start < n && head_end >= tail_start) {
    // the two one-sided pieces meet; split at the start of the tail
    d.x_bar = d.y_bar = curve[tail_start].x;
    d.regions.push_back(make_region(curve, s, 0, tail_start, from_orientation(head_o)));
    d.regions.push_back(make_region(curve, s, tail_start, n, from_orientation(tail_o)));
    return d;
  }
  for (std::size_t i = head_end; i < tail_start; ++i) {
    if (steep(s[i], lo, hi)) {
      d.ok = false;
      d.failure = "steep segment " + std::to_string(i) + " (slope " + to_string(s[i]) +
                  ") lies outside the maximal convex/concave end pieces";
      return d;
    }
  }
  if (head_end > 0) {
    d.x_bar = curve[head_end].x;
    d.regions.push_back(make_region(curve, s, 0, head_end, from_orientation(head_o)));
  }
  d.regions.push_back(make_region(curve, s, head_end, tail_start, RegionClass::lipschitz));
  if (tail_start < n) {
    d.y_bar = curve[tail_start].x;
    d.regions.push_back(make_region(curve, s, tail_start, n, from_orientation(tail_o)));
  }
  return d;
}

PropositionReport verify_proposition(const PolylineCurve& curve, const Rational& tan_phi, const Rotation& rotation,
                                     const Rational& compact_margin, const SearchOptions& options) {
  curve.require_function_graph();
  if (sgn(compact_margin) < 0) throw DomainError("compact margin must be nonnegative");
  PropositionReport rep;
  rep.hypothesis = check_admissible_k(curve, tan_phi, rotation, 2, options);
  rep.whole = lipschitz_constant(curve);

  Rational a = curve.x_min() + compact_margin;
  Rational b = curve.x_max() - compact_margin;
  if (a < b) rep.inset = lipschitz_constant(curve, a, b);

  PlanarCone cone(Point{Rational(0), Rational(0)}, tan_phi, rotation);
  rep.proposition_applies = cone.contains_direction(Point{Rational(0), Rational(1)});
  if (!rep.hypothesis.ok) {
    rep.note = "hypothesis fails: an admissible line meets the curve in " + rep.hypothesis.max_count.str() +
               " points; no claim is made";
    return rep;
  }
  if (!rep.proposition_applies) {
    rep.note = "the cone omits the vertical direction, so the structural conclusion is not implied";
    return rep;
  }
  Point r = cone.right_boundary();
  Point l = cone.left_boundary();
  if (sgn(r.x) == 0 || sgn(l.x) == 0) {
    rep.proposition_applies = false;
    rep.note = "a cone boundary ray is vertical; one-sided slope bounds are not supported";
    return rep;
  }
  Rational s1 = r.y / r.x;
  Rational s2 = l.y / l.x;
  Rational hi = std::max(s1, s2);
  Rational lo = std::min(s1, s2);
  rep.decomposition = detect_decomposition(curve, lo, hi);
  if (!rep.decomposition->ok) {
    rep.note = "decomposition failed: " + rep.decomposition->failure;
    return rep;
  }
  bool finite = true;
  for (const Region& g : rep.decomposition->regions) {
    Rational ga = std::max(g.lo, a);
    Rational gb = std::min(g.hi, b);
    if (ga >= gb) continue;
    LipschitzProfile p = lipschitz_constant(curve, ga, gb);
    finite = finite && p.finite();
    rep.region_constants.push_back(std::move(p));
  }
  rep.conclusion_verified = finite && (!rep.inset || rep.inset->finite());
  rep.note = rep.conclusion_verified ? "decomposition found; every inset compact subinterval has a finite constant"
                                     : "an inset subinterval has an infinite constant";
  return rep;
}

}  // namespace conecurve
