#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperseq {

// Runs the command line `args` (without the program name). Returns the exit
// status: 0 success, 1 check or transform failure, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperseq
