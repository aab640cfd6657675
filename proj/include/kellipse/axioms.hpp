#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kellipse/space.hpp"

namespace kellipse {

inline constexpr double kTriangleTolerance = 1e-9;

enum class Axiom { NonNegativity, Identity, Symmetry, Triangle };

std::string to_string(Axiom axiom);

struct AxiomViolation {
  Axiom axiom;
  std::vector<Point> points;  // the offending pair or triple
  double amount;              // by how much the axiom fails
};

struct AxiomReport {
  std::size_t triples_checked = 0;
  std::vector<AxiomViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Draws `sample_count` seeded triples from the space (points of a finite
/// space, a [-10, 10]^n box for a continuum, restricted to the membership
/// predicate when there is one) and checks the metric axioms on each.
AxiomReport verify_metric_axioms(const Space& space, std::size_t sample_count, std::uint64_t seed);

}  // namespace kellipse
