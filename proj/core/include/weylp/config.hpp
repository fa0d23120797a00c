#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace weylp {

// Fixed documented default so README commands reproduce README numbers.
inline constexpr std::uint64_t kDefaultSeed = 20250601;
inline constexpr int kSchemaVersion = 1;

// One experiment invocation: subcommand plus every knob the CLI exposes.
// Round-trips losslessly through the key = value config file format.
struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    std::string subcommand;        // estimate-b | weyl-exponent | verify-bounds | decompose
    std::string kernel = "gauss";  // gauss | sech
    std::string side = "half";     // half | whole | both
    std::vector<std::int64_t> n_list;
    std::vector<double> T_list;
    double step = 0.05;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 0;  // 0 = all available; results never depend on it
    std::string out;       // output path; empty = no file
    std::string format = "jsonl";  // jsonl | csv

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// key = value lines, one per field, lists comma-separated, '#' comments.
// Unknown keys and malformed values raise ConfigInvalid.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

// Structural checks shared by every subcommand (enum fields, positive step,
// trials >= 1); throws ConfigInvalid.
void validate_config(const ExperimentConfig& config);

}  // namespace weylp
