#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace papc::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,       // success, Bisimilar
  kNegative = 1,      // NotBisimilar, validation or syntax error, failed replay
  kBoundsReached = 2, // Unknown verdict, interrupt cap exceeded
  kUsage = 3,         // bad arguments, unreadable or unwritable files
};

/// Runs `papc <args...>`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace papc::cli
