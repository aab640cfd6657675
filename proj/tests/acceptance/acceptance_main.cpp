// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "kellipse/axioms.hpp"
#include "kellipse/median.hpp"
#include "kellipse/piecewise.hpp"
#include "kellipse/scene.hpp"
#include "kellipse/trace.hpp"
#include "kellipse/verifier.hpp"
#include "oracles.hpp"

using namespace kellipse;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::vector<Rational> rationals(std::initializer_list<int> values) {
  std::vector<Rational> out;
  for (int v : values) out.emplace_back(v);
  return out;
}

Scene scene(const std::string& name) { return load_scene(oracle::scene_path(name)); }

std::string members_text(const KEllipse& e) {
  std::string out = "{";
  for (const auto& p : members_finite(e)) out += (out.size() > 1 ? ", " : "") + to_string(p[0]);
  return out + "}";
}

Outcome level_sets() {
  Outcome o;
  const auto check = [&](std::initializer_list<int> foci, int r, const std::string& want) {
    const std::string got = to_string(solve_1d(rationals(foci), r));
    o.require(got == want, "solve_1d r=" + std::to_string(r) + " gave " + got);
  };
  check({-1, 0, 1}, 15, "{-5, 5}");
  check({-2, 0, 2}, 6, "{-2, 2}");
  check({-2, 0, 2}, 27, "{-9, 9}");
  for (const auto& [name, want] : std::vector<std::pair<std::string, std::string>>{
           {"exmp4.json", "{-4}"}, {"exmp5.json", "{4}"}, {"exmp6.json", "{7}"}}) {
    const std::string got = members_text(scene(name).ellipse(0));
    o.require(got == want, name + " members " + got);
  }
  return o;
}

Outcome verdict_matrix() {
  Outcome o;
  struct Row {
    const char* scene;
    ConditionId id;
    Verdict verdict;
  };
  const std::vector<Row> rows{
      {"exmp3_T.json", ConditionId::Ek1, Verdict::Pass},  {"exmp3_T.json", ConditionId::Ek2, Verdict::Fail},
      {"exmp3_S.json", ConditionId::Ek2, Verdict::Pass},  {"exmp3_S.json", ConditionId::Ek1, Verdict::Fail},
      {"rmk5_H.json", ConditionId::EPk1, Verdict::Pass},  {"rmk5_H.json", ConditionId::EPk2, Verdict::Fail},
      {"exmp6.json", ConditionId::EPPPk4, Verdict::Fail}, {"exmp2.json", ConditionId::Ek3, Verdict::Fail},
  };
  for (const auto& row : rows) {
    const Scene s = scene(row.scene);
    const SamplePlan plan = build_plan(s.ellipse(0), s.plan_config());
    const auto* exact = std::get_if<ExactPlan>(&plan);
    o.require(exact && exact->on_exhaustive, std::string(row.scene) + " plan is not exact on the ellipse");
    const ConditionReport r = check_condition(row.id, s.self_map(), s.ellipse(0), plan);
    o.require(r.verdict == row.verdict && r.exact,
              std::string(row.scene) + " " + std::string(to_string(row.id)) + " " + std::string(to_string(r.verdict)));
  }
  const auto theorem = [&](const char* name, std::size_t index, Theorem t, bool existence, bool uniqueness) {
    const Scene s = scene(name);
    const TheoremVerdict v = certify(t, s.self_map(), s.ellipse(index), build_plan(s.ellipse(index), s.plan_config()));
    o.require(v.existence_certified == existence && v.uniqueness_certified == uniqueness,
              std::string(name) + " " + std::string(to_string(t)) + " certificate");
  };
  theorem("exmp5.json", 0, Theorem::T4, true, true);
  theorem("exmp6.json", 0, Theorem::T4, true, false);
  theorem("exmp2.json", 0, Theorem::T1, true, false);
  theorem("exmp2.json", 1, Theorem::T1, true, false);
  return o;
}

Outcome chatterjea_constant() {
  Outcome o;
  const Scene s = scene("exmp4.json");
  const KEllipse& e = s.ellipse(0);
  const SamplePlan plan = build_plan(e, s.plan_config());
  o.require(std::holds_alternative<ExactPlan>(plan) && std::get<ExactPlan>(plan).exhaustive(), "plan not exhaustive");
  const ConditionReport r = check_condition(ConditionId::EPk3, s.self_map(), e, plan);
  o.require(r.exact_fitted && *r.exact_fitted == Rational(4, 7), "fitted constant is not 4/7");
  o.require(r.exact_witness.size() == 2 && r.exact_witness[0] == ExactPoint{Rational(-4)} &&
                r.exact_witness[1] == ExactPoint{Rational(-1)},
            "witness is not (-4, -1)");
  if (r.exact_witness.size() == 2 && r.exact_fitted) {
    const auto& T = s.self_map();
    const Metric& m = e.space().metric();
    const ExactPoint& x = r.exact_witness[0];
    const ExactPoint& y = r.exact_witness[1];
    const Rational lhs = m.distance(T(x), T(y));
    const Rational rhs = m.distance(T(x), y) + m.distance(T(y), x);
    o.require(lhs <= *r.exact_fitted * rhs, "fitted constant does not hold at the witness");
    o.require(lhs > (*r.exact_fitted - Rational(1, 1000000000)) * rhs, "fitted constant minus 1e-9 still holds");
  }
  o.require(s.notes.find("4/9") != std::string::npos, "fixture notes do not flag the 4/9 claim");
  return o;
}

Outcome activation() {
  Outcome o;
  const PiecewiseAffine1D f = srelu(-6, 2, 6, 3);
  o.require(to_string(fixed_point_set(f)) == "[-6, 6]", "Fix is " + to_string(fixed_point_set(f)));
  o.require(is_fixed_kellipse(f, rationals({-1, 0, 1}), 15).fixed, "E[-1,0,1;15] not fixed");
  o.require(is_fixed_kellipse(f, rationals({-2, 0, 2}), 6).fixed, "E[-2,0,2;6] not fixed");
  for (int a : {1, 2, 3}) {
    o.require(is_fixed_kellipse(f, {Rational(-a), 0, Rational(a)}, 9).fixed, "alpha " + std::to_string(a) + " not fixed");
  }
  const auto foci = rationals({-1, 0, 1});
  const auto radii = fixed_kellipse_radii(f, foci);
  o.require(to_string(radii) == "[2, 18]", "radii are " + to_string(radii));
  for (int step = 0; step <= 6400; ++step) {
    const Rational r = Rational(2) + Rational(step, 64);
    const bool scan = is_fixed_kellipse(f, foci, r).fixed;
    const bool listed = std::any_of(radii.begin(), radii.end(), [&](const Interval& i) { return i.contains(r); });
    if (scan != listed) {
      o.require(false, "radius scan disagrees at " + to_string(r));
      break;
    }
  }
  return o;
}

Outcome tracer() {
  Outcome o;
  for (const char* name : {"fig1_l1.json", "fig2_l2.json", "fig3_linf.json", "fig4_l2_3d.json", "fig5_l4_3d.json",
                           "fig6_l2_4foci.json"}) {
    const Scene s = scene(name);
    TraceConfig cfg = *s.trace;
    cfg.resolution = 256;
    const KEllipse& e = s.ellipse(0);
    std::vector<Point> pts;
    std::vector<oracle::Vec> raw;
    if (e.space().dimension() == 2) {
      for (const auto& line : trace_2d(e, cfg).polylines) pts.insert(pts.end(), line.vertices.begin(), line.vertices.end());
    } else {
      pts = sample_3d(e, cfg).points;
    }
    o.require(!pts.empty(), std::string(name) + " produced no points");
    std::size_t bad = 0;
    for (const auto& p : pts) {
      if (std::fabs(e.field()(p) - e.radius()) > 1e-6) ++bad;
      raw.push_back(oracle::coords(p));
    }
    o.require(bad == 0, std::string(name) + ": " + std::to_string(bad) + " points off the level set");
    if (std::string(name) == "fig1_l1.json" || std::string(name) == "fig3_linf.json") {
      std::vector<oracle::Vec> swapped;
      for (const auto& p : raw) swapped.push_back({p[1], p[0]});
      const double h = oracle::hausdorff(raw, swapped);
      o.require(h <= 2 * cfg.cell_size(0), std::string(name) + " symmetry distance " + std::to_string(h));
    }
  }
  return o;
}

Outcome median_solver() {
  Outcome o;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> kdist(2, 6), ndist(1, 3);
  std::uniform_real_distribution<double> coord(-10, 10);
  MedianOptions options;
  options.record_trace = true;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = ndist(rng), k = kdist(rng);
    std::vector<Point> foci;
    std::vector<oracle::Vec> raw;
    for (std::size_t i = 0; i < k; ++i) {
      oracle::Vec c(n);
      for (auto& v : c) v = coord(rng);
      raw.push_back(c);
      foci.emplace_back(c);
    }
    const SumField field(Space::continuum(n, Metric::l2()), foci);
    const MedianResult r = min_radius(field, options);
    const double reference = oracle::grid_polish_minimum(raw, 2, n == 3 ? 15 : 41);
    worst = std::max(worst, r.r_star - reference);
    o.require(std::fabs(r.r_star - reference) <= 1e-6, "trial " + std::to_string(trial) + " differs by " +
                                                           std::to_string(r.r_star - reference));
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      o.require(r.trace[i] <= r.trace[i - 1], "trial " + std::to_string(trial) + " trace increases");
    }
  }
  return o;
}

Outcome identity_condition() {
  Outcome o;
  std::mt19937_64 rng(46);
  std::uniform_int_distribution<int> nbreaks(0, 3), coord(-12, 12), slope_num(-4, 4), slope_den(1, 3),
      intercept(-6, 6), coin(0, 2), nfoci(1, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::set<int> bp;
    const int nb = nbreaks(rng);
    while (static_cast<int>(bp.size()) < nb) bp.insert(coord(rng));
    std::vector<AffinePiece> pieces;
    for (int i = 0; i <= nb; ++i) {
      pieces.push_back(coin(rng) == 0 ? AffinePiece{1, 0}
                                      : AffinePiece{Rational(slope_num(rng), slope_den(rng)), Rational(intercept(rng))});
    }
    const PiecewiseAffine1D f(std::vector<Rational>(bp.begin(), bp.end()), pieces);
    std::vector<ExactPoint> foci;
    const int k = nfoci(rng);
    for (int i = 0; i < k; ++i) foci.push_back(ExactPoint{Rational(coord(rng) / 2)});
    const SumField field(Space::continuum(1, Metric::l2()), foci);
    std::vector<Rational> rf;
    for (const auto& p : foci) rf.push_back(p[0]);
    const KEllipse e(field, minimum_1d(rf).value + Rational(coord(rng) + 13, 2));
    PlanConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    cfg.grid = GridSpec{Rational(-20), Rational(20), 81};
    cfg.random_count = 16;
    const SamplePlan plan = build_plan(e, cfg);
    const SelfMap map = to_self_map(f);
    const ConditionReport r = check_Ik(map, field, field.k(), plan);
    const auto& p = std::get<ExactPlan>(plan);
    for (const auto* part : {&p.on_ellipse, &p.off_ellipse}) {
      for (const auto& x : *part) {
        const Rational moved = oracle::dist(x[0], f(x[0]));
        const Rational violation = moved - (oracle::sum_abs(rf, x[0]) - oracle::sum_abs(rf, f(x[0]))) / (k + 1);
        if (violation <= 0 && to_double(moved) > kIdentityTolerance) {
          o.require(false, "trial " + std::to_string(trial) + ": passing point " + to_string(x[0]) + " moves");
        }
      }
    }
    o.require(r.consequence_holds.value_or(false), "trial " + std::to_string(trial) + " consequence");
    const ConditionReport id = check_Ik(SelfMap::identity(), field, field.k(), plan);
    o.require(id.verdict == Verdict::Pass && id.passing == id.checked, "identity fails in trial " + std::to_string(trial));
  }
  for (const char* name : {"exmp1.json", "exmp2.json", "exmp3_T.json", "exmp3_S.json", "exmp4.json", "exmp5.json",
                           "exmp6.json", "exmp7.json", "rmk5_H.json", "srelu.json", "prop1_l1.json"}) {
    const Scene s = scene(name);
    const KEllipse& e = s.ellipse(0);
    const ConditionReport r = check_Ik(s.self_map(), e.field(), e.k(), build_plan(e, s.plan_config()));
    o.require(r.verdict == Verdict::Fail, std::string(name) + " passes at every sample");
  }
  return o;
}

Outcome metric_axioms() {
  Outcome o;
  for (const auto& m : {Metric::l1(), Metric::l2(), Metric::linf(), Metric::lp(3)}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const AxiomReport r = verify_metric_axioms(Space::continuum(n, m), 1000, 100 + n);
      o.require(r.triples_checked == 1000 && r.ok(), m.name() + " dimension " + std::to_string(n));
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "1D level sets are exact", 1, level_sets},
      {2, "verifier verdict matrix", 5, verdict_matrix},
      {3, "exmp4 constant is 4/7 and minimal", 5, chatterjea_constant},
      {4, "SReLU fixed set and radii", 2, activation},
      {5, "tracer residuals and symmetry", 30, tracer},
      {6, "median solver against reference", 60, median_solver},
      {7, "identity condition on 500 maps", 10, identity_condition},
      {8, "metric axioms", 5, metric_axioms},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.require(seconds < c.budget_s, "over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget");
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", outcome.ok ? "PASS" : "FAIL", c.number, c.title, seconds,
                outcome.ok ? "" : ": ", outcome.detail.c_str());
    failed += outcome.ok ? 0 : 1;
  }
  return failed ? 1 : 0;
}
