#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dvf::cli {

enum ExitCode : int { Success = 0, DomainError = 1, UsageError = 2 };

// Runs `dvf <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dvf::cli
