#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chfif/config.hpp"
#include "chfif/smoothness.hpp"

namespace chfif {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitDegenerate = 3,
};

struct CommandResult {
  std::string output;  // file contents; empty when nothing should be written
  int exit_code = kExitOk;
  std::vector<std::string> diagnostics;  // one line each, for stderr
};

const std::vector<std::string>& command_names();

/// Curve file `x,f1,f2` on the original x domain.
CommandResult cmd_generate(const RunConfig& config);
CommandResult cmd_classify(const RunConfig& config);
CommandResult cmd_dimension(const RunConfig& config);
CommandResult cmd_moments(const RunConfig& config);
CommandResult cmd_validate(const RunConfig& config);

/// Dispatch by name; unknown names throw std::invalid_argument.
CommandResult run_command(std::string_view name, const RunConfig& config);

/// "Theta=Omega<1, Gamma<1" style label; Theta and Omega are merged when their
/// states agree.
std::string regime_label(const SmoothnessReport& report);

}  // namespace chfif
