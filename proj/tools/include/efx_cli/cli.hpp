#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace efx::cli {

// Exit statuses of every subcommand.
inline constexpr int kHolds = 0;
inline constexpr int kFails = 1;
inline constexpr int kInputError = 2;

// Runs `efx <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace efx::cli
