#pragma once

// Config-driven runs behind the command-line tool.

#include <filesystem>
#include <iosfwd>
#include <string>

namespace prequant {

struct ScenarioOptions {
  std::filesystem::path output = "out";
  /// Overrides the config's `filter` for the check command; non-empty also
  /// selects the check command when the config is empty.
  std::string check_filter;
};

/// Parses `config_text`, validates it, runs the command and writes outputs
/// plus manifest.json below options.output. Human-readable progress goes to
/// `log`. Returns the process exit status (0 success, 1 failed checks).
/// Throws ConfigError or std::invalid_argument on bad input.
int run_scenario(const std::string& config_text, const ScenarioOptions& options, std::ostream& log,
                 const std::string& source = "config");

}  // namespace prequant
