#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coalspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Output goes to `out`
/// unless --out names a file; diagnostics and help go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coalspec::cli
