#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace radbcs::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitNoTransition = 2;
inline constexpr int kExitConfig = 64;
inline constexpr int kExitNumeric = 70;

struct RunOptions {
  std::optional<std::filesystem::path> out;  // overrides config `output`
  unsigned threads = 1;
  unsigned long seed = 1;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand; returns the process exit code. Library errors
/// propagate as exceptions; map them with exit_code_for().
int run_command(const std::string& name, const RunConfig& config, const RunOptions& options,
                std::ostream& log);

/// Exit code for the exception currently being handled.
int exit_code_for_current_exception(std::ostream& err);

}  // namespace radbcs::app
