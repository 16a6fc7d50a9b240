// Command-line front end, callable in-process so tests can drive it without
// spawning. Subcommands: run, verify-table, fig1, audit, sweep. Exit codes:
// 0 success, 1 usage or configuration error, 2 session aborted by a failed
// security check, 3 table verification failure.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAborted = 2;
inline constexpr int kExitVerifyFailed = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

// Convenience for tests: argv without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qd
