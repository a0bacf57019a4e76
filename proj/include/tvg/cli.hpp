#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tvg {

/// Process exit statuses of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_bad_input = 1,
    exit_contract_violation = 2,
    exit_inconclusive = 3,
};

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvg
