#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace bucketeer {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the `bucketeer` executable. `args[0]` is the program name.
//
//   assign | uniformity | independence | srm | bench | repro
//
// Returns 0 on success, 1 when a validation verdict fails (a test rejects, or
// `repro` deviates from the expected verdict pattern), 2 on usage/config errors.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bucketeer
