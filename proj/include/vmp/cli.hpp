#pragma once

// Command-line front end. Exit codes: 0 pass, 1 violation, 2 usage, 3 domain.

#include <ostream>
#include <string>
#include <vector>

namespace vmp {

enum ExitCode { kExitOk = 0, kExitViolation = 1, kExitUsage = 2, kExitDomain = 3 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vmp
