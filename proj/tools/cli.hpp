#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arbokt::cli {

enum ExitCode : int {
  kPass = 0,
  kVerificationFailure = 2,
  kInputError = 3,
};

/// Runs one command line (without the program name). Reports go to out, diagnostics to
/// err. Output is a deterministic function of the arguments and input files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arbokt::cli
