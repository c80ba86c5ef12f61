#pragma once

#include <string>

#include "pn/config.hpp"

namespace pn {

enum ExitCode { exit_ok = 0, exit_validation = 1, exit_runtime = 2 };

struct CommandOptions {
  bool overwrite = false;
};

/// Run one subcommand (solve-static, extend, energy, dynamics, validate)
/// writing artifacts into cfg.output. Errors are reported as JSON on stderr
/// and, when possible, as error.json in the output directory.
int run_command(const RunConfig& cfg, const std::string& command, const CommandOptions& opts = {});

}  // namespace pn
