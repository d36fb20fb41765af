// cli.hpp: Command-line front end (rates, curve, optimal, best-temp, verify, sweep-input)

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bathtag::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

// args excludes the program name. Normal output goes to `out` unless --out is
// given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bathtag::cli
