#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wmbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point behind the `wmbench` executable. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Invariant checks run by `wmbench selftest`. Prints one PASS/FAIL line per
/// check and returns the number of failures.
int selftest(std::ostream& out);

}  // namespace wmbench::cli
