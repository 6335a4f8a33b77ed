#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sosconvex::cli {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataError = 65;

inline constexpr unsigned long long kDefaultSeed = 20240601;

/// Runs one invocation; `args` excludes the program name. Reports go to
/// `out`, diagnostics and logs to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace sosconvex::cli
