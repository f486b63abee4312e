#pragma once

#include <string>
#include <vector>

namespace polypack::cli {

// Runs the polypack command line (args exclude the program name) and returns
// the process exit code: 0 success, 1 infeasible (verify), 2 I/O or bad
// input, 3 internal invariant violation.
int run(const std::vector<std::string>& args);

} // namespace polypack::cli
