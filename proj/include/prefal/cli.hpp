#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prefal {

/// Runs the command line (argv without the program name): subcommands
/// generate | derive | classify | color | corpus-run.
/// Exit codes: 0 ok, 1 parse/config error, 2 unresolved, 3 internal
/// cross-check failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace prefal
