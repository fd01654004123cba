#pragma once

#include <optional>
#include <string>

#include "lao/cli/config.hpp"

namespace lao::cli {

/// Process exit codes of the `lao` tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitConfigError = 2,
  kExitNumericalFailure = 3,
};

enum class OutputFormat { kDefault, kJson, kCsv };

struct CommandOptions {
  bool force = false;
  OutputFormat format = OutputFormat::kDefault;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;
};

/// Existence conditions as JSON; exit code 1 when violated.
CommandResult cmd_check(const ExperimentConfig& config, const CommandOptions& options);
/// Per-object reliability matrices.
CommandResult cmd_matrix(const ExperimentConfig& config, const CommandOptions& options);
/// Selected (or dense) compound entries with their additive decomposition.
CommandResult cmd_tensor(const ExperimentConfig& config, const CommandOptions& options);
/// Decisions for K observed sequences, one whitespace-separated line each.
CommandResult cmd_classify(const ExperimentConfig& config, const CommandOptions& options,
                           const std::string& data);
/// Exact / Monte Carlo error probabilities and fitted exponents.
CommandResult cmd_simulate(const ExperimentConfig& config, const CommandOptions& options);
/// Reliability curve (one axis) or surface (two axes), CSV by default.
CommandResult cmd_sweep(const ExperimentConfig& config, const CommandOptions& options);

/// Entry point of the `lao` executable.
int run_cli(int argc, char** argv);

}  // namespace lao::cli
