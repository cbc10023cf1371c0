#pragma once

#include <ostream>

namespace uavcollect {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitUsage = 2,
    kExitInfeasible = 3,
};

/// Entry point of the command-line tool (subcommands generate, plan, sweep).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace uavcollect
