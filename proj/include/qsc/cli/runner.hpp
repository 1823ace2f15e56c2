// runner.hpp: custom-config runs and the `qsc` command line.

#pragma once

#include "qsc/cli/config.hpp"
#include "qsc/cli/presets.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qsc::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNotConverged = 2, kExitIo = 3 };

/// Seed precedence: command line, config file, QSC_SEED, built-in default.
std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed, const ExperimentConfig* cfg);

/// Parses a seed string with C base prefixes (0x.., 0..); ConfigError if malformed.
std::uint64_t parse_seed(const std::string& text);

/// Runs a custom configuration. Without a sweep: trajectory + summary;
/// with a sweep: one sweep table row per value.
RunOutcome run_custom(const ExperimentConfig& cfg, const RunOptions& options);

/// "6.2:393.7" -> qubit; ConfigError if malformed.
physical::TransmonQubit parse_qubit(const std::string& text);

/// Full command line entry; returns the process exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qsc::cli
