#pragma once

namespace hamqm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the `hamqm` tool. Reports go to --out or stdout, diagnostics
/// to stderr. Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace hamqm::cli
