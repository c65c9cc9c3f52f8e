#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsmix {

// Command-line front end. `args` excludes the program name.
// Exit codes: 0 success, 1 validation error, 2 check failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace gsmix
