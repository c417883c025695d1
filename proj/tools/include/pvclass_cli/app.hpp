#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pvclass::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kStructural = 3,
  kDegenerate = 4,
};

/// Runs one command line (argv[0] included). Normal output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvclass::cli
