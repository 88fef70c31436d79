#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gould {

// Runs one CLI command (without the program name). Exit codes:
//   0  success / property holds
//   1  property fails, object absent, or not integrable (witness printed)
//   2  usage or input error
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

} // namespace gould
