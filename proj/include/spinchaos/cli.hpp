// cli.hpp — configuration parsing, validation, and run execution for the
// command-line front end.

#pragma once

#include "spinchaos/experiments.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spinchaos::cli {

// Exit codes: 0 success, 1 computation error, 2 configuration error.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitComputationError = 1;
inline constexpr int kExitConfigError = 2;

nlohmann::json load_config_file(const std::string& path);

// Applies repeatable "dotted.key=value" overrides; values parse as JSON
// where possible and fall back to strings.
nlohmann::json apply_overrides(nlohmann::json config,
                               const std::vector<std::string>& overrides);

struct CommandOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> output_directory;
};

struct ResolvedRun {
    std::string subcommand;
    nlohmann::json config;  // fully resolved, every default materialized
    sweep::SweepSpec spec;
    sweep::ControlSettings control;
    std::vector<double> betas;
    std::string output_name;
    std::string output_directory;
    std::string config_hash;
};

// Resolves defaults and validates; throws config_error naming the offending
// key. Accepts either a plain config or a previously written manifest
// (identified by its "resolved_config" key).
ResolvedRun resolve(const std::string& subcommand, nlohmann::json input,
                    const CommandOverrides& overrides);

// Runs the sweep and writes <name>.csv plus <name>.manifest.json. Failed
// sweeps leave partial rows in <name>.csv.partial.
int execute(const ResolvedRun& run);

// Full entry point used by the binary.
int run(int argc, const char* const* argv);

}  // namespace spinchaos::cli
