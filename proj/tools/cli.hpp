#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mqshape/constants.hpp"
#include "mqshape/optimizer.hpp"
#include "mqshape/verify.hpp"

namespace mqshape::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumeric = 3, kPrecondition = 4 };

nlohmann::json constants_json(const ProblemSpec& spec, const DerivedConstants& dc);
nlohmann::json optimal_json(const ProblemSpec& spec, const CriterionKind& kind, const OptimalResult& r);
nlohmann::json bound_report_json(const BoundReport& report);

/// Runs the command line; the requested document goes to `out` in one
/// write, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mqshape::cli
