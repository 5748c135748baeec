#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flipgraph::cli {

enum ExitCode : int { kClean = 0, kViolation = 1, kInvalid = 2 };

/// Runs one command line (argv[0] is the program name). JSON goes to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flipgraph::cli
