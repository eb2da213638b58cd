#pragma once

// Command-line frontend. Exit codes: 0 success, 1 tolerance exceeded or I/O failure, 2 bad invocation.

#include <iosfwd>
#include <string>
#include <vector>

namespace nfv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. Output goes to `out` unless --out names a file.
[[nodiscard]] int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
[[nodiscard]] int run(int argc, const char* const* argv);

}  // namespace nfv::cli
