#pragma once

// The ewt2d command-line front end, callable in-process for tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace ewt::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kDataError = 3;
inline constexpr int kNumericalError = 4;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ewt::cli
