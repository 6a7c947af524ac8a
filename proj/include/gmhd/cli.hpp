#pragma once

#include <string>
#include <vector>

namespace gmhd::cli {

// Subcommand dispatch for the gmhd tool. Returns the process exit code:
// 0 success, 2 config error, 3 numerical violation, 4 blow-up abort,
// 5 I/O error.
int run(const std::vector<std::string>& args);

} // namespace gmhd::cli
