#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gc::cli {

/// Runs one command line (argv[0] is the program name). Returns the process exit code:
/// 0 success, 2 parse or usage error, 3 precondition violation, 4 internal invariant failure.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

} // namespace gc::cli
