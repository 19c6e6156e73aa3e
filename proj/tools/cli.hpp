#pragma once

#include <iosfwd>

namespace malont::cli {

// Exit codes: 0 success, 1 content failure (violations, parse errors),
// 2 environment failure (missing or unreadable files, bad usage).
inline constexpr int kOk = 0;
inline constexpr int kContentFailure = 1;
inline constexpr int kEnvironmentFailure = 2;

// Data goes to `out`, summaries and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace malont::cli
