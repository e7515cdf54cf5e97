#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace interferolab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

/// Runs one command line; args[0] is the program name. Results go to `out`
/// (or the --out file), diagnostics to `err`. Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace interferolab
