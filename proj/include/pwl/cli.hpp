#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pwl::cli {

enum ExitCode : int {
    ok = 0,
    input_error = 2,
    precondition_violation = 3,
    cross_check_failure = 4,
    degenerate = 5,
};

/// Runs the command line `args` (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pwl::cli
