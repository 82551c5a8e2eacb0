#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vincstat::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kComputationError = 1;
inline constexpr int kUsageError = 2;

// Runs one command. `args` excludes the program name. Results (and
// structured computation errors) go to `out`, usage diagnostics to `err`;
// `rate --input -` reads `in`.
int dispatch(std::vector<std::string> args, std::istream& in, std::ostream& out,
             std::ostream& err);

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace vincstat::cli
