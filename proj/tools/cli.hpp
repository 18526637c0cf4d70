#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ncq::cli {

/// Runs the command line `args` (without the program name) and returns the
/// process exit code: 0 success, 2 usage or configuration, 3 numerical,
/// 4 I/O.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncq::cli
