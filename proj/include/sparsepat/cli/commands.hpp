#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sparsepat/cli/run_config.hpp"

namespace sparsepat::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

// Each command writes its primary output to `out` (or config.out when set)
// and diagnostics to `err`, and returns an exit code.
int cmd_decode(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bound(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_conditions(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_mc(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command-line entry point: parses args (args[0] is the program name),
// merges --config, and dispatches.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sparsepat::cli
