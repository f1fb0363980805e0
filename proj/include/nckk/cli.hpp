#pragma once

#include <string>
#include <vector>

namespace nckk::cli {

/// Runs one CLI invocation.  args excludes the program name.
/// Exit codes: 0 success, 2 usage/flag errors, 3 numerical failure
/// (a machine-readable `error check=... :` line goes to err).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Convenience overload writing to std::cout / std::cerr.
int run(const std::vector<std::string>& args);

}  // namespace nckk::cli
