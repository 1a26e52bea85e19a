#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppd::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_config = 2,
    exit_numerical = 3,
    exit_io = 4,
};

/// Entry point of the `ppd` tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppd::cli
