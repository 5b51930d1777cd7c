#pragma once

#include <string>
#include <vector>

#include "ilt/config.hpp"

namespace ilt::cli {

struct CommandResult {
  int exit_code = 0;     // 0 success, 1 scientific failure, 2 usage error
  std::string summary;   // one line for stdout
};

/// Command names accepted by run_command.
const std::vector<std::string>& command_names();

/// Executes one command against a resolved config, writing all artifacts
/// under cfg.out_dir. Throws ConfigError (usage) or std::runtime_error
/// (scientific failure); the CLI maps those to exit codes 2 and 1.
CommandResult run_command(const std::string& command, const RunConfig& cfg);

}  // namespace ilt::cli
