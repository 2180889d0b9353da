#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isoglab::cli {

// Dispatch one command line (without argv[0]). Machine output (JSON or
// DOT) goes to out; diagnostics go to err. Exit codes: 0 success, 2 usage
// or precondition violation, 3 internal contract violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isoglab::cli
