#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace egr::cli {

// Runs the egrtool command line.  `args` excludes the program name.  All
// normal output goes to `out`, diagnostics to `err`.  Returns the process
// exit code:
//   0  checks passed / case feasible / search finished (found or empty)
//   1  a property check failed or a case is infeasible
//   2  usage or input error
//   3  budget exhausted before a verdict (unknown)
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace egr::cli
