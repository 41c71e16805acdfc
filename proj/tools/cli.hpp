#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jacobi::cli {

/// Exit codes: 0 success, 1 numeric or verification failure, 2 invalid
/// parameters. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace jacobi::cli
