// Command-line front end for the v2xsim shared library. Everything goes
// through the public C API.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "v2xsim.h"

namespace {

struct ConfigDeleter {
    void operator()(v2x_config* cfg) const { v2x_config_free(cfg); }
};
struct RunDeleter {
    void operator()(v2x_run* run) const { v2x_run_free(run); }
};
struct SweepDeleter {
    void operator()(v2x_sweep* sweep) const { v2x_sweep_free(sweep); }
};

int fail_with(v2x_status status) {
    std::fprintf(stderr, "error (%s): %s\n", v2x_status_name(status), v2x_last_error());
    return 1;
}

std::uint64_t stat_or_zero(const v2x_run* run, const char* name) {
    std::uint64_t value = 0;
    v2x_run_stat(run, name, &value);
    return value;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"v2xsim — parallel V2X broadcast-propagation simulator"};

    std::string config_path;
    std::string sweep_path;
    std::string trace_path;
    std::string out_dir = ".";
    std::string loss_model;
    std::string duration;
    std::string map_side;
    std::string boundary;
    std::string seed;
    int threads = 0;
    int vehicles = -1;

    app.add_option("--config", config_path, "scenario config file (key = value)")
        ->check(CLI::ExistingFile);
    app.add_option("--threads", threads, "evaluation worker count (>= 1)")
        ->check(CLI::Range(1, 1 << 16));
    app.add_option("--vehicles", vehicles, "vehicle count for the grid scenario")
        ->check(CLI::Range(0, 1 << 24));
    app.add_option("--map-side", map_side, "grid map side in meters");
    app.add_option("--duration", duration, "simulated duration in seconds");
    app.add_option("--boundary", boundary, "distance boundary in meters (inf disables culling)");
    app.add_option("--loss-model", loss_model, "obstacle loss model")
        ->check(CLI::IsMember({"ideal", "dielectric"}));
    app.add_option("--trace", trace_path, "vehicle trace CSV (switches to trace mobility)")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "scenario seed (u64)");
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--sweep", sweep_path, "benchmark sweep spec; runs the sweep instead of one scenario")
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<v2x_config, ConfigDeleter> cfg{v2x_config_create()};
    if (!cfg) {
        std::fprintf(stderr, "error: out of memory\n");
        return 1;
    }

    // Precedence: defaults, then the config file, then explicit flags.
    if (!config_path.empty())
        if (const v2x_status s = v2x_config_load_file(cfg.get(), config_path.c_str()); s != V2X_OK)
            return fail_with(s);

    const std::vector<std::pair<const char*, std::string>> overrides = {
        {"worker_count", threads > 0 ? std::to_string(threads) : ""},
        {"vehicle_count", vehicles >= 0 ? std::to_string(vehicles) : ""},
        {"map_side_m", map_side},
        {"sim_duration_s", duration},
        {"distance_boundary_m", boundary},
        {"loss_model", loss_model},
        {"trace_file", trace_path},
        {"mobility_source", trace_path.empty() ? "" : "trace"},
        {"seed", seed},
    };
    for (const auto& [key, value] : overrides) {
        if (value.empty()) continue;
        if (const v2x_status s = v2x_config_set(cfg.get(), key, value.c_str()); s != V2X_OK)
            return fail_with(s);
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::fprintf(stderr, "error: cannot create output directory \"%s\": %s\n",
                     out_dir.c_str(), ec.message().c_str());
        return 1;
    }
    const auto out_path = [&out_dir](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };

    if (!sweep_path.empty()) {
        v2x_sweep* raw_sweep = nullptr;
        if (const v2x_status s = v2x_sweep_load_file(sweep_path.c_str(), &raw_sweep); s != V2X_OK)
            return fail_with(s);
        std::unique_ptr<v2x_sweep, SweepDeleter> sweep{raw_sweep};

        const std::string bench_csv = out_path("bench.csv");
        const std::string meta = out_path("sweep_meta.json");
        if (const v2x_status s =
                v2x_sweep_run(sweep.get(), cfg.get(), bench_csv.c_str(), meta.c_str());
            s != V2X_OK) {
            std::fprintf(stderr, "note: partial results kept in %s\n", bench_csv.c_str());
            return fail_with(s);
        }
        std::printf("sweep complete: %s, %s\n", bench_csv.c_str(), meta.c_str());
        return 0;
    }

    const std::string receptions = out_path("receptions.csv");
    v2x_run* raw_run = nullptr;
    if (const v2x_status s = v2x_run_simulation(cfg.get(), receptions.c_str(), &raw_run);
        s != V2X_OK)
        return fail_with(s);
    std::unique_ptr<v2x_run, RunDeleter> run{raw_run};

    const std::string meta = out_path("run_meta.json");
    if (const v2x_status s = v2x_run_write_metadata(run.get(), meta.c_str()); s != V2X_OK)
        return fail_with(s);

    std::printf("run complete: wall_time=%.6f s\n", v2x_run_wall_time_s(run.get()));
    std::printf("  transmissions=%" PRIu64 " link_results=%" PRIu64 "\n",
                stat_or_zero(run.get(), "transmissions"), stat_or_zero(run.get(), "link_results"));
    std::printf("  links_considered=%" PRIu64 " links_culled=%" PRIu64
                " obstacle_tests=%" PRIu64 " intersections_found=%" PRIu64 "\n",
                stat_or_zero(run.get(), "links_considered"),
                stat_or_zero(run.get(), "links_culled"),
                stat_or_zero(run.get(), "obstacle_tests"),
                stat_or_zero(run.get(), "intersections_found"));
    std::printf("  wrote %s, %s\n", receptions.c_str(), meta.c_str());
    return 0;
}
