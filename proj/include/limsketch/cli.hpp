#pragma once

#include <iosfwd>

namespace limsketch {

// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitNegative = 1,
    kExitInput = 2,
    kExitBudget = 3,
    kExitPrecondition = 4,
};

// Runs one command; reports go to `out`, diagnostics to `err`.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace limsketch
