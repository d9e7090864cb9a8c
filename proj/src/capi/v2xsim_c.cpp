#include "v2xsim.h"

#include <cstring>
#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "core/config.hpp"
#include "core/environment.hpp"
#include "core/error.hpp"
#include "core/report.hpp"
#include "core/sim_engine.hpp"
#include "core/sweep.hpp"
#include "core/version.hpp"

struct v2x_config {
    v2x::SimConfig sim;
    std::set<std::string> explicit_keys;
};

struct v2x_env {
    v2x::Environment env;
};

struct v2x_run {
    v2x::RunReport report;
};

struct v2x_sweep {
    v2x::SweepSpec spec;
};

namespace {

thread_local std::string t_last_error;

void set_last_error(const std::string& message) { t_last_error = message; }

v2x_status status_of(const v2x::Error& e) {
    switch (e.code()) {
    case v2x::ErrorCode::argument: return V2X_ERR_ARGUMENT;
    case v2x::ErrorCode::parse: return V2X_ERR_PARSE;
    case v2x::ErrorCode::io: return V2X_ERR_IO;
    case v2x::ErrorCode::geometry: return V2X_ERR_GEOMETRY;
    case v2x::ErrorCode::spec: return V2X_ERR_SPEC;
    case v2x::ErrorCode::config: return V2X_ERR_CONFIG;
    }
    return V2X_ERR_INTERNAL;
}

template <typename Fn>
v2x_status guarded(Fn&& fn) {
    try {
        fn();
        return V2X_OK;
    } catch (const v2x::Error& e) {
        set_last_error(e.what());
        return status_of(e);
    } catch (const std::exception& e) {
        set_last_error(e.what());
        return V2X_ERR_INTERNAL;
    } catch (...) {
        set_last_error("unknown error");
        return V2X_ERR_INTERNAL;
    }
}

v2x_status require(bool ok, const char* message) {
    if (ok) return V2X_OK;
    set_last_error(message);
    return V2X_ERR_ARGUMENT;
}

// Builds the scenario exactly like run_simulation(cfg, sink) but with the
// obstacles replaced by the caller's environment.
v2x::RunReport run_with_env(const v2x::SimConfig& cfg, const v2x::Environment& env,
                            v2x::LinkSink& sink) {
    if (cfg.mobility_source == v2x::MobilitySource::grid) {
        v2x::GridSpec spec = cfg.grid;
        spec.seed = cfg.seed;
        v2x::GridScenario scenario = v2x::generate_grid(spec);
        v2x::Environment scene = env;
        scene.set_bounds(scenario.environment.bounds());
        return v2x::run_simulation(cfg, scene, std::move(scenario.vehicles), sink);
    }
    const v2x::Trace trace = v2x::Trace::from_csv_file(cfg.trace_file);
    return v2x::run_simulation(cfg, env, trace, sink);
}

v2x_status run_common(const v2x_config* cfg, const v2x_env* env, const char* receptions_csv_path,
                      v2x_run** out_run) {
    if (const v2x_status s = require(cfg && out_run, "cfg and out_run must not be NULL");
        s != V2X_OK)
        return s;
    *out_run = nullptr;
    return guarded([&]() {
        v2x::validate_config_conflicts(cfg->sim, cfg->explicit_keys);
        v2x::RunReport report;
        if (receptions_csv_path) {
            v2x::ReceptionsCsvWriter sink{std::string(receptions_csv_path)};
            report = env ? run_with_env(cfg->sim, env->env, sink)
                         : v2x::run_simulation(cfg->sim, sink);
        } else {
            v2x::NullSink sink;
            report = env ? run_with_env(cfg->sim, env->env, sink)
                         : v2x::run_simulation(cfg->sim, sink);
        }
        *out_run = new v2x_run{std::move(report)};
    });
}

} // namespace

extern "C" {

const char* v2x_version(void) { return v2x::kVersionString; }

const char* v2x_status_name(v2x_status status) {
    switch (status) {
    case V2X_OK: return "ok";
    case V2X_ERR_ARGUMENT: return "argument";
    case V2X_ERR_PARSE: return "parse";
    case V2X_ERR_IO: return "io";
    case V2X_ERR_GEOMETRY: return "geometry";
    case V2X_ERR_SPEC: return "spec";
    case V2X_ERR_CONFIG: return "config";
    case V2X_ERR_INTERNAL: return "internal";
    }
    return "?";
}

const char* v2x_last_error(void) { return t_last_error.c_str(); }

v2x_config* v2x_config_create(void) { return new (std::nothrow) v2x_config{}; }

void v2x_config_free(v2x_config* cfg) { delete cfg; }

v2x_status v2x_config_load_file(v2x_config* cfg, const char* path) {
    if (const v2x_status s = require(cfg && path, "cfg and path must not be NULL"); s != V2X_OK)
        return s;
    return guarded([&]() {
        const std::set<std::string> keys = v2x::load_config_file(cfg->sim, path);
        cfg->explicit_keys.insert(keys.begin(), keys.end());
    });
}

v2x_status v2x_config_set(v2x_config* cfg, const char* key, const char* value) {
    if (const v2x_status s = require(cfg && key && value, "cfg, key and value must not be NULL");
        s != V2X_OK)
        return s;
    return guarded([&]() {
        v2x::set_config_value(cfg->sim, key, value);
        cfg->explicit_keys.insert(key);
    });
}

v2x_status v2x_config_get(const v2x_config* cfg, const char* key, char* buffer, size_t* size) {
    if (const v2x_status s =
            require(cfg && key && size, "cfg, key and size must not be NULL");
        s != V2X_OK)
        return s;
    std::string value;
    if (const v2x_status s = guarded([&]() { value = v2x::get_config_value(cfg->sim, key); });
        s != V2X_OK)
        return s;
    const size_t needed = value.size() + 1;
    if (!buffer || *size < needed) {
        *size = needed;
        set_last_error("buffer too small");
        return V2X_ERR_ARGUMENT;
    }
    std::memcpy(buffer, value.c_str(), needed);
    *size = needed;
    return V2X_OK;
}

v2x_status v2x_env_load_file(const char* path, v2x_env** out_env) {
    if (const v2x_status s = require(path && out_env, "path and out_env must not be NULL");
        s != V2X_OK)
        return s;
    *out_env = nullptr;
    return guarded([&]() { *out_env = new v2x_env{v2x::Environment::from_xml_file(path)}; });
}

v2x_status v2x_env_load_string(const char* xml, v2x_env** out_env) {
    if (const v2x_status s = require(xml && out_env, "xml and out_env must not be NULL");
        s != V2X_OK)
        return s;
    *out_env = nullptr;
    return guarded([&]() { *out_env = new v2x_env{v2x::Environment::from_xml_string(xml)}; });
}

void v2x_env_free(v2x_env* env) { delete env; }

size_t v2x_env_obstacle_count(const v2x_env* env) { return env ? env->env.obstacle_count() : 0; }

size_t v2x_env_material_count(const v2x_env* env) { return env ? env->env.material_count() : 0; }

v2x_status v2x_run_simulation(const v2x_config* cfg, const char* receptions_csv_path,
                              v2x_run** out_run) {
    return run_common(cfg, nullptr, receptions_csv_path, out_run);
}

v2x_status v2x_run_simulation_with_env(const v2x_config* cfg, const v2x_env* env,
                                       const char* receptions_csv_path, v2x_run** out_run) {
    if (const v2x_status s = require(env != nullptr, "env must not be NULL"); s != V2X_OK)
        return s;
    return run_common(cfg, env, receptions_csv_path, out_run);
}

void v2x_run_free(v2x_run* run) { delete run; }

double v2x_run_wall_time_s(const v2x_run* run) { return run ? run->report.wall_time_s : 0.0; }

v2x_status v2x_run_stat(const v2x_run* run, const char* name, uint64_t* out_value) {
    if (const v2x_status s =
            require(run && name && out_value, "run, name and out_value must not be NULL");
        s != V2X_OK)
        return s;
    const std::string key(name);
    const v2x::RunReport& r = run->report;
    if (key == "links_considered") *out_value = r.stats.links_considered;
    else if (key == "links_culled") *out_value = r.stats.links_culled;
    else if (key == "obstacle_tests") *out_value = r.stats.obstacle_tests;
    else if (key == "intersections_found") *out_value = r.stats.intersections_found;
    else if (key == "transmissions") *out_value = r.transmissions;
    else if (key == "link_results") *out_value = r.link_results;
    else {
        set_last_error("unknown stat \"" + key + "\"");
        return V2X_ERR_ARGUMENT;
    }
    return V2X_OK;
}

v2x_status v2x_run_write_metadata(const v2x_run* run, const char* path) {
    if (const v2x_status s = require(run && path, "run and path must not be NULL"); s != V2X_OK)
        return s;
    return guarded([&]() { v2x::write_run_metadata_file(run->report, path); });
}

v2x_status v2x_sweep_load_file(const char* path, v2x_sweep** out_sweep) {
    if (const v2x_status s = require(path && out_sweep, "path and out_sweep must not be NULL");
        s != V2X_OK)
        return s;
    *out_sweep = nullptr;
    return guarded([&]() { *out_sweep = new v2x_sweep{v2x::SweepSpec::from_file(path)}; });
}

void v2x_sweep_free(v2x_sweep* sweep) { delete sweep; }

v2x_status v2x_sweep_run(const v2x_sweep* sweep, const v2x_config* base,
                         const char* bench_csv_path, const char* metadata_path) {
    if (const v2x_status s = require(sweep && base && bench_csv_path,
                                     "sweep, base and bench_csv_path must not be NULL");
        s != V2X_OK)
        return s;
    return guarded([&]() {
        // Merge: defaults -> sweep-referenced config file -> the caller's
        // explicitly set keys, so CLI flags keep the last word.
        v2x::SimConfig effective;
        if (!sweep->spec.config_path.empty())
            v2x::load_config_file(effective, sweep->spec.config_path);
        for (const std::string& key : base->explicit_keys)
            v2x::set_config_value(effective, key, v2x::get_config_value(base->sim, key));

        v2x::BenchCsvWriter writer{std::string(bench_csv_path)};
        std::vector<v2x::BenchRecord> records = v2x::run_sweep(
            sweep->spec, effective,
            [&writer](const v2x::BenchRecord& record) { writer.append(record); });

        if (metadata_path) {
            nlohmann::ordered_json doc;
            doc["version"] = v2x::kVersionString;
            doc["variable"] = v2x::SweepSpec::variable_name(sweep->spec.variable);
            doc["values"] = sweep->spec.values;
            doc["threads"] = sweep->spec.thread_counts;
            doc["repetitions"] = sweep->spec.repetitions;
            nlohmann::ordered_json config;
            for (const auto& [key, value] : v2x::config_echo(effective)) config[key] = value;
            doc["base_config"] = std::move(config);
            doc["records"] = records.size();
            std::ofstream out(metadata_path, std::ios::binary);
            if (!out)
                v2x::fail(v2x::ErrorCode::io,
                          "cannot open output file \"" + std::string(metadata_path) + "\"");
            out << doc.dump(2) << '\n';
        }
    });
}

} // extern "C"
