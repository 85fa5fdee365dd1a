#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scall {

// Exit codes are stable API.
enum ExitCode : int {
  kExitOk = 0,
  kExitDomainFailure = 1,  // invalid model, inconsistent judgments, no feasible allocation
  kExitInputFailure = 2,   // bad flags, unreadable or non-JSON file, search space over the cap
};

// Runs `scall <args...>` (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scall
