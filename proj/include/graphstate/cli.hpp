#pragma once

#include <iosfwd>

namespace gss {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation = 1;
inline constexpr int runtime = 2;
inline constexpr int usage = 64;
}  // namespace exit_code

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "GRAPHSTATE_OUTPUT_DIR";

/// Entry point of graphstate-sim: simulate, validate and paper-scenario.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gss
