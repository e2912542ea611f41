#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace admg::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kInvariant = 3 };

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace admg::cli
