#include "kellipse/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "kellipse/axioms.hpp"
#include "kellipse/export.hpp"
#include "kellipse/level1d.hpp"
#include "kellipse/median.hpp"

namespace kellipse {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

std::string fmt(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.dimension(); ++i) out += (i ? ", " : "") + fmt(p[i]);
  return out + ")";
}

std::string describe(const KEllipse& e) {
  std::string out = "E[";
  for (std::size_t i = 0; i < e.k(); ++i) {
    const auto& f = e.field().exact_foci()[i];
    out += (i ? ", " : "") + (f.dimension() == 1 ? to_string(f[0]) : to_string(f));
  }
  return out + "; " + to_string(e.exact_radius()) + "]";
}

json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string witness_text(const ConditionReport& r) {
  std::string out;
  if (!r.exact_witness.empty()) {
    for (const auto& p : r.exact_witness) out += (out.empty() ? "" : ", ") + to_string(p);
  } else {
    for (const auto& p : r.witness) out += (out.empty() ? "" : ", ") + fmt(p);
  }
  return out;
}

std::string report_line(const ConditionReport& r) {
  std::string line = "  " + std::string(to_string(r.id)) + ": " + std::string(to_string(r.verdict));
  if (r.fitted_constant) {
    line += "  fitted " + (r.exact_fitted ? to_string(*r.exact_fitted) : fmt(*r.fitted_constant));
  }
  if (r.verdict != Verdict::Vacuous) line += "  worst margin " + fmt(r.worst_margin);
  const std::string w = witness_text(r);
  if (!w.empty()) line += "  witness " + w;
  line += "  (" + std::to_string(r.checked) + " checked";
  if (r.skipped) line += ", " + std::to_string(r.skipped) + " skipped";
  line += ")";
  if (r.consequence_holds) {
    line += "  passing " + std::to_string(r.passing) + ", all fixed: " + (*r.consequence_holds ? "yes" : "no");
  }
  return line;
}

std::string plan_summary(const SamplePlan& plan) {
  return std::visit(
      [](const auto& p) {
        constexpr bool exact = std::is_same_v<std::decay_t<decltype(p)>, ExactPlan>;
        return std::string(exact ? "exact" : "floating point") + ", " + (p.exhaustive() ? "exhaustive" : "sampled") +
               " plan: " + std::to_string(p.on_ellipse.size()) + " on, " + std::to_string(p.off_ellipse.size()) + " off";
      },
      plan);
}

struct Options {
  std::string scene;
  std::optional<std::uint64_t> seed;
  // trace
  std::string svg, csv;
  std::optional<int> resolution;
  std::optional<double> refine_tol;
  std::vector<double> bbox;
  // verify
  std::string theorem = "t1";
  std::vector<std::string> conditions;
  std::optional<std::size_t> ellipse;
  std::string report;
  // axioms
  std::size_t samples = 1000;
};

std::vector<std::size_t> chosen_ellipses(const Scene& scene, const Options& o) {
  if (scene.ellipses.empty()) throw ArgumentError("scene has no ellipse");
  if (o.ellipse) {
    scene.ellipse(*o.ellipse);
    return {*o.ellipse};
  }
  std::vector<std::size_t> all(scene.ellipses.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

int cmd_trace(const Scene& scene, const Options& o, std::ostream& out) {
  const KEllipse& e = scene.ellipse(o.ellipse.value_or(0));
  const std::size_t n = e.space().dimension();
  if (n != 2 && n != 3) throw ArgumentError("trace needs a two- or three-dimensional continuum");
  TraceConfig cfg = scene.trace ? *scene.trace : default_trace_box(e, 256);
  if (o.resolution) cfg.resolution = *o.resolution;
  if (o.refine_tol) cfg.refine_tol = *o.refine_tol;
  if (!o.bbox.empty()) {
    if (o.bbox.size() != 2 * n) throw ArgumentError("--bbox needs lo,hi for each axis");
    for (std::size_t a = 0; a < n; ++a) {
      cfg.lo[a] = o.bbox[2 * a];
      cfg.hi[a] = o.bbox[2 * a + 1];
    }
  }
  cfg.validate(n);

  SvgStyle style;
  style.x_lo = cfg.lo[0];
  style.x_hi = cfg.hi[0];
  style.y_lo = cfg.lo[1];
  style.y_hi = cfg.hi[1];
  style.foci = e.field().foci();
  style.title = scene.name.empty() ? describe(e) : scene.name;

  std::vector<Point> points;
  std::string svg;
  bool touches = false;
  std::size_t pieces = 0;
  if (n == 2) {
    const TraceResult result = trace_2d(e, cfg);
    for (const auto& line : result.polylines) points.insert(points.end(), line.vertices.begin(), line.vertices.end());
    svg = export_svg(result.polylines, style);
    touches = result.touches_boundary;
    pieces = result.polylines.size();
  } else {
    const CloudResult result = sample_3d(e, cfg);
    points = result.points;
    svg = export_svg_cloud(points, style);
    touches = result.touches_boundary;
  }
  double residual = 0.0;
  for (const auto& p : points) residual = std::max(residual, std::abs(e.field()(p) - e.radius()));

  if (!o.svg.empty()) write_text_file(o.svg, svg);
  if (!o.csv.empty()) write_text_file(o.csv, export_csv(points));
  out << describe(e) << " in " << e.space().metric().name() << ", resolution " << cfg.resolution << "\n";
  if (n == 2) out << "polylines: " << pieces << "\n";
  out << "points: " << points.size() << "\n";
  out << "max residual: " << fmt(residual) << "\n";
  out << "touches bounding box: " << (touches ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_verify(const Scene& scene, const Options& o, std::ostream& out) {
  if (!scene.map) throw ArgumentError("verify needs a scene with a map");
  const std::string theorem_name = [&] {
    std::string t = o.theorem;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    return t;
  }();
  bool any_fail = false;
  json results = json::array();
  for (std::size_t index : chosen_ellipses(scene, o)) {
    const KEllipse& e = scene.ellipses[index];
    const SamplePlan plan = build_plan(e, scene.plan_config());
    out << "ellipse " << index << ": " << describe(e) << " (" << plan_summary(plan) << ")\n";
    json entry{{"ellipse", index}, {"description", describe(e)}};
    if (!o.conditions.empty()) {
      json conditions = json::array();
      for (const auto& name : o.conditions) {
        const ConditionReport r = check_condition(parse_condition_id(name), scene.self_map(), e, plan);
        out << report_line(r) << "\n";
        any_fail = any_fail || r.verdict == Verdict::Fail;
        conditions.push_back(report_to_json(r));
      }
      entry["conditions"] = std::move(conditions);
    } else if (theorem_name == "t5") {
      const ConditionReport r = check_Ik(scene.self_map(), e.field(), e.k(), plan);
      out << "T5 (identity test)\n" << report_line(r) << "\n";
      any_fail = any_fail || r.verdict == Verdict::Fail;
      entry["theorem"] = "T5";
      entry["conditions"] = json::array({report_to_json(r)});
    } else {
      const TheoremVerdict v = certify(parse_theorem(theorem_name), scene.self_map(), e, plan);
      out << to_string(v.theorem) << " existence conditions\n";
      for (const auto& r : v.existence) out << report_line(r) << "\n";
      out << to_string(v.theorem) << " uniqueness conditions\n";
      for (const auto& r : v.uniqueness) out << report_line(r) << "\n";
      out << "existence certified: " << (v.existence_certified ? "yes" : "no") << " (" << v.qualifier() << ")\n";
      out << "uniqueness certified: " << (v.uniqueness_certified ? "yes" : "no") << " (" << v.qualifier() << ")\n";
      for (const auto* group : {&v.existence, &v.uniqueness}) {
        for (const auto& r : *group) any_fail = any_fail || r.verdict == Verdict::Fail;
      }
      entry.update(verdict_to_json(v));
    }
    results.push_back(std::move(entry));
  }
  if (!o.report.empty()) {
    json doc{{"scene", scene.name}, {"seed", o.seed.value_or(scene.seed)}, {"results", std::move(results)}};
    write_text_file(o.report, doc.dump(2) + "\n");
  }
  return any_fail ? kExitFail : kExitOk;
}

int cmd_median(const Scene& scene, const Options& o, std::ostream& out) {
  const KEllipse& e = scene.ellipse(o.ellipse.value_or(0));
  const SumField& field = e.field();
  const Space& space = field.space();
  if (space.exact() && (space.is_finite() || space.dimension() == 1)) {
    std::optional<Rational> best;
    std::optional<ExactPoint> argmin;
    if (space.is_finite()) {
      for (const auto& p : space.points()) {
        const Rational v = field(p);
        if (!best || v < *best) {
          best = v;
          argmin = p;
        }
      }
    } else {
      std::vector<Rational> foci;
      for (const auto& f : field.exact_foci()) foci.push_back(f[0]);
      const Minimum1D m = minimum_1d(foci);
      if (space.is_mixed()) {
        // Only members count; fall back to the numeric solver.
        const MedianResult r = min_radius(field, scene.median);
        out << "(" << fmt(r.r_star) << ", " << fmt(r.argmin[0]) << ")\n";
        out << "method: " << to_string(r.method) << "\n";
        return kExitOk;
      }
      best = m.value;
      argmin = ExactPoint{m.lo};
      if (m.lo != m.hi) out << "minimum attained on [" << to_string(m.lo) << ", " << to_string(m.hi) << "]\n";
    }
    const std::string where = argmin->dimension() == 1 ? to_string((*argmin)[0]) : to_string(*argmin);
    out << "(" << to_string(*best) << ", " << where << ")\n";
    out << "method: exact\n";
    return kExitOk;
  }
  const MedianResult r = min_radius(field, scene.median);
  const std::string where = r.argmin.dimension() == 1 ? fmt(r.argmin[0]) : fmt(r.argmin);
  out << "(" << fmt(r.r_star) << ", " << where << ")\n";
  out << "method: " << to_string(r.method) << ", iterations: " << r.iterations << "\n";
  return kExitOk;
}

int cmd_fixpoints(const Scene& scene, std::ostream& out) {
  if (!scene.piecewise) throw ArgumentError("fixpoints needs a scene with a piecewise map");
  const PiecewiseAffine1D& f = *scene.piecewise;
  out << "map: " << f.describe() << "\n";
  out << "Fix = " << to_string(fixed_point_set(f)) << "\n";
  for (const auto& foci : scene.radii_foci) {
    std::string name;
    for (const auto& x : foci) name += (name.empty() ? "" : ", ") + to_string(x);
    const auto radii = fixed_kellipse_radii(f, foci);
    out << "radii for foci {" << name << "}: " << (radii.empty() ? "{}" : to_string(radii)) << "\n";
  }
  return kExitOk;
}

int cmd_axioms(const Scene& scene, const Options& o, std::ostream& out) {
  const AxiomReport report = verify_metric_axioms(scene.space, o.samples, o.seed.value_or(scene.seed));
  out << scene.space.metric().name() << " in dimension " << scene.space.dimension() << ": " << report.triples_checked
      << " triples, " << report.violations.size() << " violations\n";
  for (const auto& v : report.violations) {
    out << "  " << to_string(v.axiom) << " by " << fmt(v.amount) << " at";
    for (const auto& p : v.points) out << " " << fmt(p);
    out << "\n";
  }
  return report.ok() ? kExitOk : kExitFail;
}

}  // namespace

json report_to_json(const ConditionReport& r) {
  json j{{"condition", to_string(r.id)},
         {"verdict", to_string(r.verdict)},
         {"worst_margin", number_json(r.worst_margin)},
         {"checked", r.checked},
         {"skipped", r.skipped},
         {"exact", r.exact},
         {"exhaustive", r.exhaustive}};
  j["fitted_constant"] = r.fitted_constant ? number_json(*r.fitted_constant) : json(nullptr);
  if (r.exact_fitted) j["exact_fitted"] = to_string(*r.exact_fitted);
  json witness = json::array();
  if (!r.exact_witness.empty()) {
    for (const auto& p : r.exact_witness) {
      json coords = json::array();
      for (const auto& c : p.coords()) coords.push_back(to_string(c));
      witness.push_back(std::move(coords));
    }
  } else {
    for (const auto& p : r.witness) witness.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
  }
  j["witness"] = std::move(witness);
  if (r.consequence_holds) {
    j["passing"] = r.passing;
    j["consequence_holds"] = *r.consequence_holds;
  }
  return j;
}

json verdict_to_json(const TheoremVerdict& v) {
  json existence = json::array(), uniqueness = json::array();
  for (const auto& r : v.existence) existence.push_back(report_to_json(r));
  for (const auto& r : v.uniqueness) uniqueness.push_back(report_to_json(r));
  return json{{"theorem", to_string(v.theorem)},
              {"existence_certified", v.existence_certified},
              {"uniqueness_certified", v.uniqueness_certified},
              {"qualifier", v.qualifier()},
              {"existence", std::move(existence)},
              {"uniqueness", std::move(uniqueness)}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-ellipse tracing and fixed-figure verification", "kellipse"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Override the scene seed");

  auto* trace = app.add_subcommand("trace", "Trace the level set to SVG and CSV");
  trace->add_option("scene", o.scene, "Scene file")->required();
  trace->add_option("-o,--output", o.svg, "SVG output path");
  trace->add_option("--csv", o.csv, "CSV output path");
  trace->add_option("--resolution", o.resolution, "Cells per axis")->check(CLI::Range(8, 4096));
  trace->add_option("--refine-tol", o.refine_tol, "Bisection tolerance")->check(CLI::PositiveNumber);
  trace->add_option("--bbox", o.bbox, "lo,hi per axis")->delimiter(',');
  trace->add_option("--ellipse", o.ellipse, "Ellipse index");

  auto* verify = app.add_subcommand("verify", "Check a theorem's conditions");
  verify->add_option("scene", o.scene, "Scene file")->required();
  verify->add_option("--theorem", o.theorem, "t1, t2, t3, t4 or t5")
      ->check(CLI::IsMember({"t1", "t2", "t3", "t4", "t5"}, CLI::ignore_case));
  verify->add_option("--condition", o.conditions, "Check single conditions instead (e.g. Ek1, E'k3, Bk3)");
  verify->add_option("--ellipse", o.ellipse, "Ellipse index (default: all)");
  verify->add_option("--report", o.report, "JSON report path");

  auto* median = app.add_subcommand("median", "Print (r_star, argmin)");
  median->add_option("scene", o.scene, "Scene file")->required();
  median->add_option("--ellipse", o.ellipse, "Ellipse index");

  auto* fixpoints = app.add_subcommand("fixpoints", "Fixed points and fixed k-ellipse radii of a piecewise map");
  fixpoints->add_option("scene", o.scene, "Scene file")->required();

  auto* axioms = app.add_subcommand("axioms", "Sample the metric axioms");
  axioms->add_option("scene", o.scene, "Scene file")->required();
  axioms->add_option("--samples", o.samples, "Triples to draw")->check(CLI::Range(std::size_t{3}, std::size_t{10'000'000}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (*seed_opt) o.seed = seed;

  try {
    Scene scene = load_scene(o.scene);
    if (o.seed) scene.seed = *o.seed;
    if (app.got_subcommand(trace)) return cmd_trace(scene, o, out);
    if (app.got_subcommand(verify)) return cmd_verify(scene, o, out);
    if (app.got_subcommand(median)) return cmd_median(scene, o, out);
    if (app.got_subcommand(fixpoints)) return cmd_fixpoints(scene, out);
    return cmd_axioms(scene, o, out);
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"kellipse"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace kellipse
