#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swarmshop {

// Entry point of the command-line tool. args excludes the program name.
// Returns the process exit code: 0 success, 1 usage or configuration error,
// 2 instance parse or I/O error, 3 runtime fault.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swarmshop
