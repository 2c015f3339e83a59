#pragma once

#include <iosfwd>

namespace mvapprox::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. Results go to `out`
/// unless --out is given; diagnostics and warnings go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mvapprox::cli
