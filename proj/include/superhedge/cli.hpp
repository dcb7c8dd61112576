#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superhedge {

/// Runs the command-line interface.  Exit codes: 0 success, 2 input error,
/// 3 budget/feasibility error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace superhedge
