#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hankel::cli {

inline constexpr const char* kReportSchema = "hankel-report/1";

/// Runs one invocation (args exclude the program name). Exit codes: 0
/// pass/consistent, 1 fail/counterexample, 2 budget-exceeded, 3 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names of every experiment command, sweep excluded.
std::vector<std::string> command_names();

}  // namespace hankel::cli
