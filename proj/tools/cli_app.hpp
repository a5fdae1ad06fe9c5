#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifgi::cli {

/// Runs one CLI invocation. Machine-readable output goes to `out`,
/// human-readable summaries and errors to `err`. Returns the process exit
/// code: 0 success, 2 argument validation failure, 1 runtime failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ifgi::cli
