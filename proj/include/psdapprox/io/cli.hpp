#pragma once

#include <iosfwd>

namespace psdapprox::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the `psdapprox` tool. Exit codes: 0 success, 2 invalid
/// flags, input or bounds, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psdapprox::io
