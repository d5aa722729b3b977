// cli.hpp: command-line front end (alpha, rho, entropy, verify)
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cct::cli {

enum ExitCode : int { kOk = 0, kNumerical = 1, kConfig = 2 };

// Runs one invocation. `args` excludes the program name. Tables go to `out`
// unless an output path is configured; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cct::cli
