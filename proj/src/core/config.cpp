#include "core/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "core/error.hpp"

namespace v2x {

void SimConfig::validate() const {
    if (!(sim_duration_s > 0.0))
        fail(ErrorCode::config, "sim_duration_s must be > 0");
    radio.validate();
    if (pool.worker_count < 1)
        fail(ErrorCode::config, "worker_count must be >= 1");
    if (mobility_source == MobilitySource::grid) {
        grid.validate();
        if (!trace_file.empty())
            fail(ErrorCode::config, "trace_file is set but mobility_source is grid");
        if (!environment_file.empty())
            fail(ErrorCode::config, "environment_file requires mobility_source = trace");
    } else {
        if (trace_file.empty())
            fail(ErrorCode::config, "mobility_source = trace requires trace_file");
    }
}

namespace {

double parse_double(std::string_view key, std::string_view value) {
    const std::string text(value);
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(text, &used);
    } catch (const std::exception&) {
        fail(ErrorCode::config, std::string(key) + ": not a number: \"" + text + "\"");
    }
    if (used != text.size())
        fail(ErrorCode::config, std::string(key) + ": not a number: \"" + text + "\"");
    return out;
}

long long parse_int(std::string_view key, std::string_view value) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(ErrorCode::config, std::string(key) + ": not an integer: \"" + std::string(value) + "\"");
    return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(ErrorCode::config,
             std::string(key) + ": not an unsigned integer: \"" + std::string(value) + "\"");
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "1" || value == "true" || value == "on") return true;
    if (value == "0" || value == "false" || value == "off") return false;
    fail(ErrorCode::config, std::string(key) + ": expected a boolean, got \"" + std::string(value) + "\"");
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

struct KeyHandler {
    const char* key;
    std::function<void(SimConfig&, std::string_view)> set;
    std::function<std::string(const SimConfig&)> get;
};

const std::vector<KeyHandler>& handlers() {
    auto check_positive_int = [](std::string_view key, long long v, long long min) {
        if (v < min)
            fail(ErrorCode::config,
                 std::string(key) + ": must be >= " + std::to_string(min));
        return v;
    };

    static const std::vector<KeyHandler> table = {
        {"sim_duration_s",
         [](SimConfig& c, std::string_view v) { c.sim_duration_s = parse_double("sim_duration_s", v); },
         [](const SimConfig& c) { return format_double(c.sim_duration_s); }},
        {"mobility_source",
         [](SimConfig& c, std::string_view v) {
             if (v == "grid") c.mobility_source = MobilitySource::grid;
             else if (v == "trace") c.mobility_source = MobilitySource::trace;
             else fail(ErrorCode::config, "mobility_source: expected grid|trace");
         },
         [](const SimConfig& c) {
             return std::string(c.mobility_source == MobilitySource::grid ? "grid" : "trace");
         }},
        {"loss_model",
         [](SimConfig& c, std::string_view v) {
             if (v == "ideal") c.loss_model = LossModel::ideal;
             else if (v == "dielectric") c.loss_model = LossModel::dielectric;
             else fail(ErrorCode::config, "loss_model: expected ideal|dielectric");
         },
         [](const SimConfig& c) {
             return std::string(c.loss_model == LossModel::ideal ? "ideal" : "dielectric");
         }},
        {"seed", [](SimConfig& c, std::string_view v) { c.seed = parse_u64("seed", v); },
         [](const SimConfig& c) { return std::to_string(c.seed); }},
        {"worker_count",
         [check_positive_int](SimConfig& c, std::string_view v) {
             c.pool.worker_count =
                 static_cast<int>(check_positive_int("worker_count", parse_int("worker_count", v), 1));
         },
         [](const SimConfig& c) { return std::to_string(c.pool.worker_count); }},
        {"beacon_jitter",
         [](SimConfig& c, std::string_view v) { c.beacon_jitter = parse_bool("beacon_jitter", v); },
         [](const SimConfig& c) { return std::string(c.beacon_jitter ? "on" : "off"); }},
        {"tx_power_dbm",
         [](SimConfig& c, std::string_view v) { c.radio.tx_power_dbm = parse_double("tx_power_dbm", v); },
         [](const SimConfig& c) { return format_double(c.radio.tx_power_dbm); }},
        {"antenna_gain_tx_dbi",
         [](SimConfig& c, std::string_view v) {
             c.radio.antenna_gain_tx_dbi = parse_double("antenna_gain_tx_dbi", v);
         },
         [](const SimConfig& c) { return format_double(c.radio.antenna_gain_tx_dbi); }},
        {"antenna_gain_rx_dbi",
         [](SimConfig& c, std::string_view v) {
             c.radio.antenna_gain_rx_dbi = parse_double("antenna_gain_rx_dbi", v);
         },
         [](const SimConfig& c) { return format_double(c.radio.antenna_gain_rx_dbi); }},
        {"system_loss_db",
         [](SimConfig& c, std::string_view v) { c.radio.system_loss_db = parse_double("system_loss_db", v); },
         [](const SimConfig& c) { return format_double(c.radio.system_loss_db); }},
        {"rx_sensitivity_dbm",
         [](SimConfig& c, std::string_view v) {
             c.radio.rx_sensitivity_dbm = parse_double("rx_sensitivity_dbm", v);
         },
         [](const SimConfig& c) { return format_double(c.radio.rx_sensitivity_dbm); }},
        {"carrier_frequency_hz",
         [](SimConfig& c, std::string_view v) {
             c.radio.carrier_frequency_hz = parse_double("carrier_frequency_hz", v);
         },
         [](const SimConfig& c) { return format_double(c.radio.carrier_frequency_hz); }},
        {"bandwidth_hz",
         [](SimConfig& c, std::string_view v) { c.radio.bandwidth_hz = parse_double("bandwidth_hz", v); },
         [](const SimConfig& c) { return format_double(c.radio.bandwidth_hz); }},
        {"pathloss_exponent",
         [](SimConfig& c, std::string_view v) {
             c.radio.pathloss_exponent = parse_double("pathloss_exponent", v);
         },
         [](const SimConfig& c) { return format_double(c.radio.pathloss_exponent); }},
        {"distance_boundary_m",
         [](SimConfig& c, std::string_view v) {
             c.radio.distance_boundary_m = parse_double("distance_boundary_m", v);
         },
         [](const SimConfig& c) { return format_double(c.radio.distance_boundary_m); }},
        {"message_length_bytes",
         [check_positive_int](SimConfig& c, std::string_view v) {
             c.radio.message_length_bytes = static_cast<std::uint32_t>(
                 check_positive_int("message_length_bytes", parse_int("message_length_bytes", v), 0));
         },
         [](const SimConfig& c) { return std::to_string(c.radio.message_length_bytes); }},
        {"beacon_interval_s",
         [](SimConfig& c, std::string_view v) {
             c.radio.beacon_interval_s = parse_double("beacon_interval_s", v);
         },
         [](const SimConfig& c) { return format_double(c.radio.beacon_interval_s); }},
        {"map_side_m",
         [](SimConfig& c, std::string_view v) { c.grid.map_side_m = parse_double("map_side_m", v); },
         [](const SimConfig& c) { return format_double(c.grid.map_side_m); }},
        {"road_spacing_m",
         [](SimConfig& c, std::string_view v) { c.grid.road_spacing_m = parse_double("road_spacing_m", v); },
         [](const SimConfig& c) { return format_double(c.grid.road_spacing_m); }},
        {"lanes_per_road",
         [check_positive_int](SimConfig& c, std::string_view v) {
             c.grid.lanes_per_road =
                 static_cast<int>(check_positive_int("lanes_per_road", parse_int("lanes_per_road", v), 1));
         },
         [](const SimConfig& c) { return std::to_string(c.grid.lanes_per_road); }},
        {"lane_width_m",
         [](SimConfig& c, std::string_view v) { c.grid.lane_width_m = parse_double("lane_width_m", v); },
         [](const SimConfig& c) { return format_double(c.grid.lane_width_m); }},
        {"building_setback_m",
         [](SimConfig& c, std::string_view v) {
             c.grid.building_setback_m = parse_double("building_setback_m", v);
         },
         [](const SimConfig& c) { return format_double(c.grid.building_setback_m); }},
        {"building_height_m",
         [](SimConfig& c, std::string_view v) {
             c.grid.building_height_m = parse_double("building_height_m", v);
         },
         [](const SimConfig& c) { return format_double(c.grid.building_height_m); }},
        {"antenna_height_m",
         [](SimConfig& c, std::string_view v) {
             c.grid.antenna_height_m = parse_double("antenna_height_m", v);
         },
         [](const SimConfig& c) { return format_double(c.grid.antenna_height_m); }},
        {"speed_min_mps",
         [](SimConfig& c, std::string_view v) { c.grid.speed_min_mps = parse_double("speed_min_mps", v); },
         [](const SimConfig& c) { return format_double(c.grid.speed_min_mps); }},
        {"speed_max_mps",
         [](SimConfig& c, std::string_view v) { c.grid.speed_max_mps = parse_double("speed_max_mps", v); },
         [](const SimConfig& c) { return format_double(c.grid.speed_max_mps); }},
        {"vehicle_count",
         [check_positive_int](SimConfig& c, std::string_view v) {
             c.grid.vehicle_count =
                 static_cast<int>(check_positive_int("vehicle_count", parse_int("vehicle_count", v), 0));
         },
         [](const SimConfig& c) { return std::to_string(c.grid.vehicle_count); }},
        {"trace_file", [](SimConfig& c, std::string_view v) { c.trace_file = std::string(v); },
         [](const SimConfig& c) { return c.trace_file; }},
        {"environment_file",
         [](SimConfig& c, std::string_view v) { c.environment_file = std::string(v); },
         [](const SimConfig& c) { return c.environment_file; }},
    };
    return table;
}

const KeyHandler* find_handler(std::string_view key) {
    const auto& table = handlers();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [key](const KeyHandler& h) { return key == h.key; });
    return it == table.end() ? nullptr : &*it;
}

} // namespace

void set_config_value(SimConfig& cfg, std::string_view key, std::string_view value) {
    const KeyHandler* handler = find_handler(key);
    if (!handler)
        fail(ErrorCode::config, "unknown configuration key \"" + std::string(key) + "\"");
    handler->set(cfg, value);
}

std::string get_config_value(const SimConfig& cfg, std::string_view key) {
    const KeyHandler* handler = find_handler(key);
    if (!handler)
        fail(ErrorCode::config, "unknown configuration key \"" + std::string(key) + "\"");
    return handler->get(cfg);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const KeyHandler& h : handlers()) out.emplace_back(h.key);
        return out;
    }();
    return keys;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

} // namespace

std::set<std::string> load_config_string(SimConfig& cfg, std::string_view text) {
    std::set<std::string> keys_set;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const std::size_t eq = view.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorCode::config,
                 "config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        try {
            set_config_value(cfg, key, value);
        } catch (const Error& e) {
            fail(ErrorCode::config, "config line " + std::to_string(line_no) + ": " + e.what());
        }
        keys_set.insert(key);
    }
    return keys_set;
}

std::set<std::string> load_config_file(SimConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::io, "cannot open config file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_config_string(cfg, buffer.str());
}

std::vector<std::pair<std::string, std::string>> config_echo(const SimConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const std::string& key : config_keys())
        out.emplace_back(key, get_config_value(cfg, key));
    return out;
}

void validate_config_conflicts(const SimConfig& cfg, const std::set<std::string>& explicit_keys) {
    if (cfg.mobility_source == MobilitySource::trace) {
        static const char* grid_only[] = {
            "vehicle_count", "map_side_m", "road_spacing_m", "lanes_per_road",  "lane_width_m",
            "building_setback_m", "building_height_m", "antenna_height_m", "speed_min_mps",
            "speed_max_mps"};
        for (const char* key : grid_only)
            if (explicit_keys.count(key))
                fail(ErrorCode::config,
                     std::string("\"") + key + "\" is a grid option and conflicts with a trace source");
    }
    cfg.validate();
}

} // namespace v2x
