#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hlpg {

// Exit codes of the command-line frontend.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kModel = 3, kCap = 4 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hlpg
