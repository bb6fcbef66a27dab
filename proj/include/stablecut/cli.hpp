#ifndef STABLECUT_CLI_HPP
#define STABLECUT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace stablecut {

/// Exit codes: 0 success, 1 the algorithm declined or failed, 2 usage or
/// input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand (gen, solve, verify, certify, split, bench). The
/// result is a single JSON document on `out`; diagnostics go to `err`.
/// args[0] is the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stablecut

#endif  // STABLECUT_CLI_HPP
