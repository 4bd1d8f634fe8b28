#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aucpower::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

// Environment variable holding the default worker thread count.
inline constexpr const char* kThreadsEnv = "AUCPOWER_THREADS";

// Runs the tool on `args` (args[0] is the program name), writing results to
// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aucpower::cli
