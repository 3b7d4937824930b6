#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracmean::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitPrecondition = 4;

// Parses argv, runs one subcommand and writes its artifact to `out` (or
// the --output path). Diagnostics go to `err`. Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracmean::app
