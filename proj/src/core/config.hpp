#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/mobility.hpp"
#include "core/radio_medium.hpp"
#include "core/types.hpp"

namespace v2x {

enum class MobilitySource { grid, trace };

// Fully resolved scenario configuration. Field defaults are the built-in
// scenario: a 2 km grid city with 100 vehicles and the DSRC radio setup from
// RadioConfig.
struct SimConfig {
    double sim_duration_s = 100.0;
    MobilitySource mobility_source = MobilitySource::grid;
    LossModel loss_model = LossModel::dielectric;
    RadioConfig radio;
    WorkerPoolConfig pool;
    std::uint64_t seed = 1;
    bool beacon_jitter = false;
    GridSpec grid;
    std::string trace_file;
    std::string environment_file;

    void validate() const; // throws Error(config)
};

// Key/value access used by the config file, the C API and the CLI. Keys
// mirror the field names; see config_keys() for the full list.
void set_config_value(SimConfig& cfg, std::string_view key, std::string_view value);
std::string get_config_value(const SimConfig& cfg, std::string_view key);
const std::vector<std::string>& config_keys();

// Flat key = value file, '#' comments. Returns the keys that were set.
std::set<std::string> load_config_file(SimConfig& cfg, const std::string& path);
std::set<std::string> load_config_string(SimConfig& cfg, std::string_view text);

// Full echo in key order; sufficient to re-run the scenario bit-identically.
std::vector<std::pair<std::string, std::string>> config_echo(const SimConfig& cfg);

// Rejects combinations such as a trace source with explicitly set grid-only
// options. explicit_keys are the keys the user actually set.
void validate_config_conflicts(const SimConfig& cfg, const std::set<std::string>& explicit_keys);

} // namespace v2x
