#pragma once

#include "robin/cli/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace robin::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_invalid_config = 2;
inline constexpr int exit_solve_failed = 3;
inline constexpr int exit_unwritable = 4;

extern const char* const tool_version;

struct RunOptions {
    unsigned threads = 1;
};

/// Runs the configured experiment and writes manifest.json, CSV tables and SVG
/// plots into config.output_dir. Returns the manifest.
/// Throws ConfigError, OutputError, or robin::Error from the numerics.
Json execute(const RunConfig& config, const RunOptions& options = {});

/// The robin-lab command: loads the config, applies the overrides, runs, and
/// maps failures to exit codes with a one-line JSON error on `err`.
int run_command(const std::string& experiment, const std::string& config_path,
                const std::optional<std::string>& output_dir, unsigned threads, std::ostream& out,
                std::ostream& err);

} // namespace robin::cli
