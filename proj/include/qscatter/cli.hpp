#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qscatter::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kToolVersion = "1.0.0";

/// Entry point of the command-line tool; returns the process exit code.
/// Subcommands: point, scan, truncate, optimize, verify.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qscatter::cli
