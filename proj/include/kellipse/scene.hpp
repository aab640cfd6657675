#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kellipse/median.hpp"
#include "kellipse/piecewise.hpp"
#include "kellipse/plan.hpp"
#include "kellipse/selfmap.hpp"
#include "kellipse/trace.hpp"

namespace kellipse {

inline constexpr int kSceneSchemaVersion = 1;

/// A scene file: the space, the ellipses, an optional self-map or
/// piecewise map, and tracing and sampling settings.
struct Scene {
  std::string name;
  std::string description;
  std::string notes;
  std::uint64_t seed = 0;
  Space space;
  std::vector<KEllipse> ellipses;
  std::optional<SelfMap> map;
  std::optional<PiecewiseAffine1D> piecewise;
  /// Focus lists whose fixed radii `fixpoints` reports.
  std::vector<std::vector<Rational>> radii_foci;
  std::optional<TraceConfig> trace;
  PlanConfig plan;
  MedianOptions median;
  /// Documented outcomes; not interpreted by the loader.
  nlohmann::json expect;

  const KEllipse& ellipse(std::size_t index = 0) const;
  const SelfMap& self_map() const;
  /// The scene's plan settings for ellipse `index`, with the scene seed.
  PlanConfig plan_config() const;
};

/// ParseError on malformed JSON, unknown schema versions, non-finite numbers
/// or inconsistent objects.
Scene parse_scene(std::string_view text);
Scene load_scene(const std::string& path);

/// Numbers may be JSON numbers or strings holding integers, fractions or
/// decimals.
Rational parse_number(const nlohmann::json& value);

}  // namespace kellipse
