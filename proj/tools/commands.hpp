#ifndef HMT_TOOLS_COMMANDS_HPP
#define HMT_TOOLS_COMMANDS_HPP

#include <string>
#include <vector>

namespace hmt::cli {

/// Dispatches one invocation. args excludes the program name, e.g.
/// {"solve", "--config", "problem.cfg", "--out", "results"}.
/// Exit codes: 0 success (including honestly reported non-convergence),
/// 1 numerical failure, 2 malformed configuration or usage.
int run_cli(const std::vector<std::string>& args);

} // namespace hmt::cli

#endif
