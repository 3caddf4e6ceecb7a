#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "socdim/config.hpp"

namespace socdim::tools {

struct CommandInfo {
  std::string_view name;
  std::string_view help;
};

const std::vector<CommandInfo>& commands();

// Runs one command; throws socdim::Error on failure. Output files are only
// left behind when the command succeeds.
void run_command(std::string_view name, const RunConfig& config);

}  // namespace socdim::tools
