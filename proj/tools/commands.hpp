#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>

namespace fracwave::cli {

enum ExitCode { ok = 0, config_error = 2, numerical_failure = 3 };

/// Command-line flags; each one, when given, replaces the matching config field.
struct Overrides {
  std::optional<double> alpha;
  std::optional<int> modes;
  std::optional<int> grid_nodes;
  std::optional<std::string> grid_grading;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise;
  std::optional<std::string> out;
};

/// Merge flags into the config document for `command`.
void apply_overrides(const std::string& command, nlohmann::json& config, const Overrides& o);

/// Run one subcommand on an (already merged) config. Throws ConfigError,
/// std::invalid_argument or NumericalError.
void run_command(const std::string& command, const nlohmann::json& config, std::ostream& log);

/// Full entry point: argv parsing, config loading, error -> exit code mapping.
int main(int argc, char** argv);

}  // namespace fracwave::cli
