#include "kellipse/scene.hpp"

#include <cmath>

#include "kellipse/export.hpp"
#include "kellipse/verifier.hpp"

namespace kellipse {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError("scene: " + what); }

std::string text_field(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const json& v = doc.at(key);
  if (v.is_string()) return v.get<std::string>();
  std::string out;
  for (const auto& line : v) {
    if (!out.empty()) out += '\n';
    out += line.get<std::string>();
  }
  return out;
}

const json& require(const json& object, const char* key) {
  if (!object.is_object() || !object.contains(key)) fail(std::string("missing \"") + key + "\"");
  return object.at(key);
}

std::vector<Rational> parse_numbers(const json& value) {
  if (!value.is_array()) fail("expected an array of numbers");
  std::vector<Rational> out;
  for (const auto& v : value) out.push_back(parse_number(v));
  return out;
}

ExactPoint parse_point(const json& value, std::size_t dimension) {
  std::vector<Rational> coords = value.is_array() ? parse_numbers(value) : std::vector<Rational>{parse_number(value)};
  if (coords.size() != dimension) {
    fail("point of dimension " + std::to_string(coords.size()) + " in a space of dimension " + std::to_string(dimension));
  }
  return ExactPoint(std::move(coords));
}

std::vector<ExactPoint> parse_points(const json& value, std::size_t dimension) {
  if (!value.is_array()) fail("expected an array of points");
  std::vector<ExactPoint> out;
  for (const auto& v : value) out.push_back(parse_point(v, dimension));
  return out;
}

Metric parse_metric(const json& value) {
  const std::string kind = value.is_string() ? value.get<std::string>() : require(value, "kind").get<std::string>();
  if (kind == "l1") return Metric::l1();
  if (kind == "l2") return Metric::l2();
  if (kind == "linf") return Metric::linf();
  if (kind == "lp") {
    try {
      return Metric::lp(to_double(parse_number(require(value, "p"))));
    } catch (const ArgumentError& e) {
      fail(e.what());
    }
  }
  fail("unknown metric \"" + kind + "\"");
}

Interval parse_interval(const json& value) {
  Interval i = Interval::whole_line();
  if (value.contains("lo") && !value.at("lo").is_null()) {
    i.lo = parse_number(value.at("lo"));
    i.lo_closed = value.value("lo_closed", true);
  }
  if (value.contains("hi") && !value.at("hi").is_null()) {
    i.hi = parse_number(value.at("hi"));
    i.hi_closed = value.value("hi_closed", true);
  }
  if (i.empty()) fail("empty interval");
  return i;
}

Space parse_space(const json& value) {
  const std::string kind = value.value("kind", "continuum");
  const Metric metric = parse_metric(require(value, "metric"));
  if (kind == "finite") {
    const std::size_t dim = value.value("dimension", std::size_t{1});
    std::vector<ExactPoint> points = parse_points(require(value, "points"), dim);
    if (points.empty()) fail("a finite space needs at least one point");
    return Space::finite(std::move(points), metric);
  }
  if (kind != "continuum") fail("unknown space kind \"" + kind + "\"");
  const std::size_t dim = require(value, "dimension").get<std::size_t>();
  if (dim < 1 || dim > 3) fail("continuum dimension must be 1, 2 or 3");
  if (value.contains("membership")) {
    if (dim != 1) fail("membership applies to one-dimensional spaces only");
    std::vector<Interval> parts;
    for (const auto& p : value.at("membership")) parts.push_back(parse_interval(p));
    return Space::mixed(metric, Membership(std::move(parts)));
  }
  return Space::continuum(dim, metric);
}

KEllipse parse_ellipse(const json& value, const Space& space) {
  std::vector<ExactPoint> foci = parse_points(require(value, "foci"), space.dimension());
  const Rational r = parse_number(require(value, "r"));
  return KEllipse(SumField(space, std::move(foci)), r);
}

Region parse_region(const json& value, const std::vector<KEllipse>& ellipses, const Space& space) {
  if (value.is_string() && value.get<std::string>() == "otherwise") return OtherwiseRegion{};
  if (!value.is_object()) fail("bad region");
  if (value.contains("on_ellipse")) {
    const std::size_t index = value.at("on_ellipse").get<std::size_t>();
    if (index >= ellipses.size()) fail("region refers to a missing ellipse");
    return OnEllipseRegion{ellipses[index], value.value("tol", 1e-6)};
  }
  if (value.contains("in_set")) return FiniteSetRegion{parse_points(value.at("in_set"), space.dimension())};
  if (value.contains("interval")) {
    if (space.dimension() != 1) fail("interval regions need a one-dimensional space");
    return IntervalRegion{parse_interval(value.at("interval"))};
  }
  if (value.contains("half_space")) {
    const json& h = value.at("half_space");
    std::vector<Rational> normal = parse_numbers(require(h, "normal"));
    if (normal.size() != space.dimension()) fail("half-space normal has the wrong dimension");
    return HalfSpaceRegion{std::move(normal), parse_number(require(h, "offset")), h.value("strict", false)};
  }
  fail("unknown region " + value.dump());
}

Action parse_action(const json& value, const Space& space) {
  if (value.is_string() && value.get<std::string>() == "identity") return IdentityAction{};
  if (!value.is_object()) fail("bad action");
  if (value.contains("constant")) return ConstantAction{parse_point(value.at("constant"), space.dimension())};
  if (value.contains("affine")) {
    if (space.dimension() != 1) fail("affine actions need a one-dimensional space");
    const json& a = value.at("affine");
    return AffineAction{parse_number(require(a, "slope")), parse_number(require(a, "intercept"))};
  }
  if (value.contains("mobius")) {
    if (space.dimension() != 1) fail("mobius actions need a one-dimensional space");
    const json& m = value.at("mobius");
    return MobiusAction{parse_number(require(m, "a")), parse_number(require(m, "b")), parse_number(require(m, "c")),
                        parse_number(require(m, "d"))};
  }
  fail("unknown action " + value.dump());
}

SelfMap parse_map(const json& value, const std::vector<KEllipse>& ellipses, const Space& space) {
  if (value.contains("fixing")) {
    const json& f = value.at("fixing");
    std::vector<KEllipse> chosen;
    if (f.contains("ellipses")) {
      for (const auto& i : f.at("ellipses")) {
        const std::size_t index = i.get<std::size_t>();
        if (index >= ellipses.size()) fail("fixing map refers to a missing ellipse");
        chosen.push_back(ellipses[index]);
      }
    } else {
      chosen = ellipses;
    }
    try {
      return make_fixing_map(chosen, parse_point(require(f, "fallback"), space.dimension()));
    } catch (const ArgumentError& e) {
      fail(e.what());
    }
  }
  std::vector<Rule> rules;
  for (const auto& rule : require(value, "rules")) {
    rules.push_back({parse_region(require(rule, "region"), ellipses, space), parse_action(require(rule, "action"), space)});
  }
  SelfMap map(std::move(rules));
  if (!map.total()) fail("the last map rule must be \"otherwise\"");
  return map;
}

PiecewiseAffine1D parse_piecewise(const json& value) {
  if (value.contains("srelu")) {
    const json& s = value.at("srelu");
    try {
      return srelu(parse_number(require(s, "tl")), parse_number(require(s, "al")), parse_number(require(s, "tr")),
                   parse_number(require(s, "ar")));
    } catch (const ArgumentError& e) {
      fail(e.what());
    }
  }
  std::vector<Rational> breakpoints = parse_numbers(require(value, "breakpoints"));
  std::vector<AffinePiece> pieces;
  for (const auto& p : require(value, "pieces")) {
    const auto pair = parse_numbers(p);
    if (pair.size() != 2) fail("a piece is [slope, intercept]");
    pieces.push_back({pair[0], pair[1]});
  }
  std::vector<Owner> owners;
  if (value.contains("owners")) {
    for (const auto& o : value.at("owners")) {
      const std::string s = o.get<std::string>();
      if (s != "left" && s != "right") fail("owner must be \"left\" or \"right\"");
      owners.push_back(s == "left" ? Owner::Left : Owner::Right);
    }
  }
  try {
    return PiecewiseAffine1D(std::move(breakpoints), std::move(pieces), std::move(owners));
  } catch (const ArgumentError& e) {
    fail(e.what());
  }
}

TraceConfig parse_trace(const json& value, std::size_t dimension) {
  TraceConfig cfg;
  for (const auto& axis : require(value, "bbox")) {
    const auto pair = parse_numbers(axis);
    if (pair.size() != 2) fail("bbox axes are [lo, hi]");
    cfg.lo.push_back(to_double(pair[0]));
    cfg.hi.push_back(to_double(pair[1]));
  }
  cfg.resolution = value.value("resolution", 256);
  cfg.refine_tol = value.value("refine_tol", 1e-9);
  try {
    cfg.validate(dimension);
  } catch (const ArgumentError& e) {
    fail(e.what());
  }
  return cfg;
}

PlanConfig parse_plan(const json& value, std::size_t dimension) {
  PlanConfig cfg;
  cfg.off_count = value.value("off_count", cfg.off_count);
  cfg.random_count = value.value("random_count", cfg.random_count);
  cfg.on_tol = value.value("on_tol", cfg.on_tol);
  cfg.default_resolution = value.value("resolution", cfg.default_resolution);
  if (value.contains("grid")) {
    const json& g = value.at("grid");
    cfg.grid = GridSpec{parse_number(require(g, "lo")), parse_number(require(g, "hi")), require(g, "count").get<std::size_t>()};
    if (cfg.grid->count == 0 || cfg.grid->hi < cfg.grid->lo) fail("bad plan grid");
  }
  if (value.contains("extra_off")) cfg.extra_off = parse_points(value.at("extra_off"), dimension);
  return cfg;
}

}  // namespace

Rational parse_number(const json& value) {
  try {
    if (value.is_number_integer()) {
      return value.is_number_unsigned() ? Rational(value.get<std::uint64_t>()) : Rational(value.get<std::int64_t>());
    }
    if (value.is_number_float()) {
      const double v = value.get<double>();
      if (!std::isfinite(v)) fail("non-finite number");
      // The shortest decimal that round-trips, so 0.1 reads as 1/10.
      return parse_rational(format_double(v));
    }
    if (value.is_string()) return parse_rational(value.get<std::string>());
  } catch (const ArgumentError& e) {
    fail(e.what());
  }
  fail("expected a number, got " + value.dump());
}

const KEllipse& Scene::ellipse(std::size_t index) const {
  if (index >= ellipses.size()) throw ArgumentError("scene has no ellipse " + std::to_string(index));
  return ellipses[index];
}

const SelfMap& Scene::self_map() const {
  if (!map) throw ArgumentError("scene has no self-map");
  return *map;
}

PlanConfig Scene::plan_config() const {
  PlanConfig cfg = plan;
  cfg.seed = seed;
  return cfg;
}

Scene parse_scene(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scene: ") + e.what());
  }
  try {
    if (!doc.is_object()) fail("top level must be an object");
    if (require(doc, "schema_version").get<int>() != kSceneSchemaVersion) fail("unsupported schema_version");
    Space space = parse_space(require(doc, "space"));
    std::vector<KEllipse> ellipses;
    if (doc.contains("ellipse")) ellipses.push_back(parse_ellipse(doc.at("ellipse"), space));
    if (doc.contains("ellipses")) {
      for (const auto& e : doc.at("ellipses")) ellipses.push_back(parse_ellipse(e, space));
    }
    std::optional<PiecewiseAffine1D> piecewise;
    std::vector<std::vector<Rational>> radii_foci;
    if (doc.contains("piecewise")) {
      if (space.dimension() != 1) fail("piecewise maps need a one-dimensional space");
      piecewise = parse_piecewise(doc.at("piecewise"));
      if (doc.at("piecewise").contains("radii_foci")) {
        for (const auto& f : doc.at("piecewise").at("radii_foci")) radii_foci.push_back(parse_numbers(f));
      }
    }
    std::optional<SelfMap> map;
    if (doc.contains("map")) {
      const json& m = doc.at("map");
      if (m.contains("piecewise")) {
        if (!piecewise) fail("map refers to a missing piecewise map");
        map = to_self_map(*piecewise);
      } else {
        map = parse_map(m, ellipses, space);
      }
    }
    std::optional<TraceConfig> trace;
    if (doc.contains("trace")) trace = parse_trace(doc.at("trace"), space.dimension());
    PlanConfig plan = doc.contains("plan") ? parse_plan(doc.at("plan"), space.dimension()) : PlanConfig{};
    MedianOptions median;
    if (doc.contains("median")) {
      const json& m = doc.at("median");
      median.tolerance = m.value("tolerance", median.tolerance);
      median.max_iterations = m.value("max_iterations", median.max_iterations);
      if (!(median.tolerance > 0) || median.max_iterations == 0) fail("bad median options");
    }
    return Scene{doc.value("name", ""),
                 text_field(doc, "description"),
                 text_field(doc, "notes"),
                 doc.value("seed", std::uint64_t{0}),
                 std::move(space),
                 std::move(ellipses),
                 std::move(map),
                 std::move(piecewise),
                 std::move(radii_foci),
                 std::move(trace),
                 std::move(plan),
                 median,
                 doc.value("expect", json::object())};
  } catch (const json::exception& e) {
    throw ParseError(std::string("scene: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("scene: ") + e.what());
  }
}

Scene load_scene(const std::string& path) { return parse_scene(read_text_file(path)); }

}  // namespace kellipse
