#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace curvlab::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs one command. args excludes the program name. The report goes to
/// --out when given, otherwise to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvlab::cli
