#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace augsel {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPipelineError = 1;
inline constexpr int kExitInputError = 2;

/// Entry point for the augsel tool. `args` excludes the program name.
/// Returns the process exit code; diagnostics go to `err` as one line.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace augsel
