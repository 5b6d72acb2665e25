#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace essnorm::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  ok = 0,
  rejected = 1,  ///< not admissible, failed verification, or failed sandwich
  config_error = 2,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace essnorm::cli
