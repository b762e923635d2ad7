#pragma once

#include <cstdint>
#include <iosfwd>

namespace hrgen::cli {

inline constexpr std::uint64_t kDefaultSeed = 1;

enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kEmptySlice = 3,
    kInvariantBreach = 4,
};

// The hrgen command line. Output goes to `out` unless --output is given;
// diagnostics always go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hrgen::cli
