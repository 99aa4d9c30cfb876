#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace turnpike {

/// Entry point behind the `turnpike` binary. `args` excludes the program
/// name. Returns the process exit code:
///   0 success, 1 usage/config error, 2 numerical failure,
///   3 verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace turnpike
