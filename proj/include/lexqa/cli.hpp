#pragma once

#include <iosfwd>

namespace lexqa {

/// Process exit codes of the lexqa command.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitNotFound = 3,
    kExitGateway = 4,
};

/// Runs the lexqa command line (ingest, ask, eval, serve, stub-gateway).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lexqa
