#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace geophase {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Bad or inconsistent configuration: unknown field, wrong type, invalid value.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical precondition failed while running the experiment (open shape
// path, step/delay mismatch, non-finite state, ...).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully resolved experiment description: defaults, then config file, then
// --set overrides, validated against a strict per-experiment schema.
struct ExperimentConfig {
  std::string experiment;
  nlohmann::json resolved;             // full config actually used
  std::vector<std::string> overrides;  // raw --set strings, in order
};

struct ExperimentResult {
  std::filesystem::path output_dir;
  std::vector<std::string> files;          // names written under output_dir
  std::int64_t negative_quote_ticks = 0;   // across all discrete trajectories
};

// Known experiment names, in documentation order.
const std::vector<std::string>& experiment_names();

// Schema/default config for one experiment (what load_config validates against).
nlohmann::json default_config(const std::string& experiment);

// Build a validated config: defaults <- optional JSON file <- "key.path=value"
// overrides <- optional output dir override. Throws ConfigError with the
// offending field path.
ExperimentConfig load_config(const std::string& experiment,
                             const std::optional<std::filesystem::path>& config_file,
                             const std::vector<std::string>& set_overrides,
                             const std::optional<std::string>& out_dir);

// Run one experiment, writing its CSV/JSON outputs plus metadata.json into
// the configured output directory. Deterministic: identical config produces
// byte-identical files.
ExperimentResult run(const ExperimentConfig& cfg);

}  // namespace geophase
