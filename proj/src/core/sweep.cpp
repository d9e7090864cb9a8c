#include "core/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace v2x {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<double> parse_value_list(std::string_view text, const char* key) {
    std::vector<double> values;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        const std::string trimmed{trim(item)};
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(trimmed, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != trimmed.size() || !std::isfinite(v))
            fail(ErrorCode::parse, std::string(key) + ": bad list entry \"" + trimmed + "\"");
        values.push_back(v);
    }
    if (values.empty())
        fail(ErrorCode::parse, std::string(key) + ": list must not be empty");
    return values;
}

int to_int(double v, const char* key) {
    if (v != std::floor(v) || v < 0.0 || v > 2147483647.0)
        fail(ErrorCode::parse, std::string(key) + ": values must be non-negative integers");
    return static_cast<int>(v);
}

} // namespace

const char* SweepSpec::variable_name(Variable v) {
    switch (v) {
    case Variable::vehicles: return "vehicles";
    case Variable::map_side: return "map_side";
    case Variable::threads: return "threads";
    }
    return "?";
}

void SweepSpec::validate() const {
    if (values.empty())
        fail(ErrorCode::parse, "sweep values must not be empty");
    if (!std::is_sorted(values.begin(), values.end()) ||
        std::adjacent_find(values.begin(), values.end()) != values.end())
        fail(ErrorCode::parse, "sweep values must be strictly increasing");
    if (repetitions < 1)
        fail(ErrorCode::parse, "repetitions must be >= 1");
    if (variable == Variable::threads && !thread_counts.empty())
        fail(ErrorCode::parse, "threads axis cannot be combined with variable = threads");
    if (variable != Variable::map_side)
        for (const double v : values) to_int(v, "values");
    for (const int w : thread_counts)
        if (w < 1)
            fail(ErrorCode::parse, "threads: worker counts must be >= 1");
}

SweepSpec SweepSpec::from_string(std::string_view text, const std::string& base_dir) {
    SweepSpec spec;
    bool saw_variable = false;
    bool saw_values = false;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const std::size_t eq = view.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorCode::parse, "sweep line " + std::to_string(line_no) + ": expected key = value");
        const std::string key{trim(view.substr(0, eq))};
        const std::string value{trim(view.substr(eq + 1))};

        if (key == "variable") {
            if (value == "vehicles") spec.variable = Variable::vehicles;
            else if (value == "map_side") spec.variable = Variable::map_side;
            else if (value == "threads") spec.variable = Variable::threads;
            else
                fail(ErrorCode::parse, "sweep line " + std::to_string(line_no) +
                                           ": variable must be vehicles|map_side|threads");
            saw_variable = true;
        } else if (key == "values") {
            spec.values = parse_value_list(value, "values");
            saw_values = true;
        } else if (key == "threads") {
            for (const double v : parse_value_list(value, "threads"))
                spec.thread_counts.push_back(to_int(v, "threads"));
        } else if (key == "repetitions") {
            spec.repetitions = to_int(parse_value_list(value, "repetitions").at(0), "repetitions");
        } else if (key == "config") {
            spec.config_path = base_dir.empty()
                                   ? value
                                   : (std::filesystem::path(base_dir) / value).string();
        } else {
            fail(ErrorCode::parse,
                 "sweep line " + std::to_string(line_no) + ": unknown key \"" + key + "\"");
        }
    }

    if (!saw_variable) fail(ErrorCode::parse, "sweep spec is missing \"variable\"");
    if (!saw_values) fail(ErrorCode::parse, "sweep spec is missing \"values\"");
    spec.validate();
    return spec;
}

SweepSpec SweepSpec::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::io, "cannot open sweep spec \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str(), std::filesystem::path(path).parent_path().string());
}

std::vector<BenchRecord> run_sweep(const SweepSpec& spec, const SimConfig& base,
                                   const BenchRecordCallback& on_record) {
    spec.validate();
    if (spec.variable != SweepSpec::Variable::threads &&
        base.mobility_source != MobilitySource::grid)
        fail(ErrorCode::config, "vehicle and map sweeps require a grid scenario");

    std::vector<int> workers = spec.thread_counts;
    if (workers.empty()) workers.push_back(base.pool.worker_count);

    std::vector<BenchRecord> records;
    for (const double value : spec.values) {
        for (const int worker_count : spec.variable == SweepSpec::Variable::threads
                                          ? std::vector<int>{to_int(value, "values")}
                                          : workers) {
            SimConfig cfg = base;
            cfg.pool.worker_count = worker_count;
            switch (spec.variable) {
            case SweepSpec::Variable::vehicles:
                cfg.grid.vehicle_count = to_int(value, "values");
                break;
            case SweepSpec::Variable::map_side:
                cfg.grid.map_side_m = value;
                break;
            case SweepSpec::Variable::threads:
                break;
            }
            cfg.validate();

            for (int rep = 1; rep <= spec.repetitions; ++rep) {
                NullSink sink;
                const RunReport report = run_simulation(cfg, sink);

                BenchRecord record;
                record.scenario = std::string(SweepSpec::variable_name(spec.variable)) + "=" +
                                  format_csv_double(value);
                record.vehicle_count = cfg.grid.vehicle_count;
                record.map_side_m = cfg.grid.map_side_m;
                record.worker_count = worker_count;
                record.repetition = rep;
                record.wall_time_s = report.wall_time_s;
                record.links_considered = report.stats.links_considered;
                record.links_culled = report.stats.links_culled;
                record.obstacle_tests = report.stats.obstacle_tests;
                if (on_record) on_record(record);
                records.push_back(std::move(record));
            }
        }
    }
    return records;
}

} // namespace v2x
