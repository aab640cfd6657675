#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kellipse/scene.hpp"
#include "kellipse/verifier.hpp"

namespace kellipse {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitSolver = 3 };

/// Command-line entry point: trace, verify, median, fixpoints, axioms.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Machine-readable form of a condition report.
nlohmann::json report_to_json(const ConditionReport& report);
nlohmann::json verdict_to_json(const TheoremVerdict& verdict);

}  // namespace kellipse
