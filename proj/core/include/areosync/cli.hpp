#pragma once

#include <string>
#include <vector>

namespace areosync {

/// Command-line entry point shared by the installed binary and the test
/// suites. Subcommands: run, certify, equilibrium, dump-topology.
/// Exit codes: 0 success, 1 validation error, 2 runtime abort,
/// 3 certification threshold failure.
int cli_main(const std::vector<std::string>& args);

int cli_main(int argc, const char* const* argv);

}  // namespace areosync
