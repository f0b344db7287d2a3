/// @file scenario.hpp
/// @brief Config-driven experiment runner shared by the CLI and the tests.
///
/// A scenario is a flat JSON object:
///
///     {"schema_version": 1, "experiment": "partition", "seed": 7,
///      "units": "reduced", "output_dir": "out", "formats": ["csv", "json"],
///      "N_total": 20, "steps": 100}
///
/// Parsing is strict. Every key is checked against the experiment's parameter
/// table and every value is range-checked before anything runs.

#pragma once

#include "infotherm/core_thermo.hpp"

#include "json.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace infotherm::cli {

inline constexpr int kConfigSchemaVersion = 1;

/// Bad configuration or flags. Maps to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json, Svg };

const char* to_string(Format format);

/// Parses "csv,json,svg" (any subset, any order). "" or "none" selects no files.
std::set<Format> parse_formats(const std::string& list);

struct ScenarioConfig {
    std::string experiment;
    nlohmann::json parameters = nlohmann::json::object(); ///< experiment-specific keys only
    std::uint64_t seed = 0;
    UnitMode units = UnitMode::Reduced;
    std::string output_dir = ".";
    std::set<Format> formats{Format::Csv, Format::Json};
};

const std::vector<std::string>& experiment_names();

/// Strict parse of a flat config object. Throws UsageError naming the field.
ScenarioConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a config file. Throws UsageError on unreadable or
/// malformed input.
ScenarioConfig load_config(const std::string& path);

/// Checks every parameter of `config` (names, types, ranges, module
/// preconditions) and returns the normalized parameter set with defaults
/// filled in. Throws UsageError.
nlohmann::json validate_config(const ScenarioConfig& config);

/// Rendered but not yet written output.
struct Artifact {
    std::string file_name;
    Format format;
    std::string content;
};

struct RunSummary {
    nlohmann::json config_echo;
    nlohmann::json results;
    double wall_seconds = 0.0;
    std::vector<std::string> artifacts; ///< file names that emit_outputs writes
    std::string version;

    /// The summary document. Wall-clock time is left out of the file copy so
    /// that identical configs give byte-identical files.
    nlohmann::json to_json(bool include_wall_time) const;
};

struct ScenarioRun {
    RunSummary summary;
    std::vector<Artifact> artifacts; ///< already filtered by the requested formats
};

/// Validates, runs the experiment and renders its artifacts in memory.
ScenarioRun run_scenario(const ScenarioConfig& config);

/// Writes the artifacts under `output_dir` (created if missing) and returns
/// the written paths. Throws std::runtime_error on I/O failure.
std::vector<std::string> emit_outputs(const ScenarioRun& run, const std::string& output_dir);

const char* version();

} // namespace infotherm::cli
