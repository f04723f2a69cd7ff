#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edm::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kParameter = 3,
};

// Runs one subcommand (validate, recode, rules, tree, eval). args excludes the
// program name. Reports go to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edm::cli
