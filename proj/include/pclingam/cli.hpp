#pragma once

#include <iosfwd>

namespace pclingam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitComputationError = 3;

/// Entry point shared by the executable and the tests. Subcommands:
/// discover, simulate, evaluate.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pclingam::cli
