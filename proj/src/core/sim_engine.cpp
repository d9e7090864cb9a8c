#include "core/sim_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "core/error.hpp"
#include "core/worker_pool.hpp"

namespace v2x {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Engine-facing position source sampled at exact beacon times.
class MobilityDriver {
public:
    virtual ~MobilityDriver() = default;
    virtual void advance_to(double time_s) = 0; // called with non-decreasing times
    virtual const std::vector<Vehicle>& vehicles() const = 0;
};

class GridDriver final : public MobilityDriver {
public:
    GridDriver(std::vector<Vehicle> vehicles, const Aabb& bounds)
        : vehicles_(std::move(vehicles)), bounds_(bounds) {}

    void advance_to(double time_s) override {
        if (time_s > current_) {
            step_positions(vehicles_, time_s - current_, bounds_);
            current_ = time_s;
        }
    }

    const std::vector<Vehicle>& vehicles() const override { return vehicles_; }

private:
    std::vector<Vehicle> vehicles_;
    Aabb bounds_;
    double current_ = 0.0;
};

class TraceDriver final : public MobilityDriver {
public:
    explicit TraceDriver(const Trace& trace) : trace_(trace) {}

    void advance_to(double time_s) override {
        if (time_s != current_) {
            vehicles_ = trace_.positions_at(time_s);
            current_ = time_s;
        }
    }

    const std::vector<Vehicle>& vehicles() const override { return vehicles_; }

private:
    const Trace& trace_;
    std::vector<Vehicle> vehicles_;
    double current_ = -1.0;
};

struct BeaconSlot {
    double offset_s;
    std::int32_t id;
};

// Per-vehicle offsets within a round: zero unless jitter is enabled, in which
// case each vehicle gets a seeded uniform offset in [0, interval).
std::vector<BeaconSlot> beacon_slots(const std::vector<std::int32_t>& ids, const SimConfig& cfg) {
    std::vector<BeaconSlot> slots;
    slots.reserve(ids.size());
    for (const std::int32_t id : ids) {
        double offset = 0.0;
        if (cfg.beacon_jitter) {
            const std::uint64_t bits =
                splitmix64(cfg.seed ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(id)));
            offset = static_cast<double>(bits >> 11) * 0x1.0p-53 * cfg.radio.beacon_interval_s;
        }
        slots.push_back({offset, id});
    }
    std::sort(slots.begin(), slots.end(), [](const BeaconSlot& a, const BeaconSlot& b) {
        return a.offset_s != b.offset_s ? a.offset_s < b.offset_s : a.id < b.id;
    });
    return slots;
}

RunReport run_loop(const SimConfig& cfg, const Environment& env, MobilityDriver& driver,
                   const std::vector<std::int32_t>& ids, LinkSink& sink) {
    cfg.radio.validate();
    if (!(cfg.sim_duration_s > 0.0))
        fail(ErrorCode::config, "sim_duration_s must be > 0");

    RunReport report;
    report.config = cfg;

    WorkerPool pool(cfg.pool.worker_count);
    Clock::duration timed{0};

    const auto prologue_start = Clock::now();
    const double interval = cfg.radio.beacon_interval_s;
    const auto rounds = static_cast<std::uint64_t>(
        std::floor(cfg.sim_duration_s / interval + 1e-6));
    const std::vector<BeaconSlot> slots = beacon_slots(ids, cfg);
    std::vector<Vehicle> receivers;
    timed += Clock::now() - prologue_start;

    for (std::uint64_t round = 0; round < rounds; ++round) {
        const double round_start = static_cast<double>(round) * interval;
        for (const BeaconSlot& slot : slots) {
            const auto t0 = Clock::now();
            const double t = round_start + slot.offset_s;
            driver.advance_to(t);

            const std::vector<Vehicle>& present = driver.vehicles();
            const auto tx_it =
                std::find_if(present.begin(), present.end(),
                             [&slot](const Vehicle& v) { return v.id == slot.id; });
            if (tx_it == present.end()) {
                timed += Clock::now() - t0; // vehicle not yet present (trace source)
                continue;
            }

            Transmission tx{slot.id, tx_it->position, t, cfg.radio.message_length_bytes};
            receivers.clear();
            for (const Vehicle& v : present)
                if (v.id != slot.id) receivers.push_back(v);

            std::vector<LinkResult> results =
                cfg.pool.worker_count == 1
                    ? evaluate_links_sequential(env, tx, receivers, cfg.radio, cfg.loss_model,
                                                report.stats)
                    : evaluate_links_parallel(env, tx, receivers, cfg.radio, cfg.loss_model, pool,
                                              report.stats);
            timed += Clock::now() - t0;

            ++report.transmissions;
            report.link_results += results.size();
            for (const LinkResult& r : results) sink.on_result(t, r);
        }
    }

    report.wall_time_s =
        std::chrono::duration_cast<std::chrono::duration<double>>(timed).count();
    return report;
}

} // namespace

RunReport run_simulation(const SimConfig& cfg, const Environment& env,
                         std::vector<Vehicle> vehicles, LinkSink& sink) {
    std::vector<std::int32_t> ids;
    ids.reserve(vehicles.size());
    for (const Vehicle& v : vehicles) ids.push_back(v.id);

    Aabb bounds = env.bounds();
    GridDriver driver(std::move(vehicles), bounds);
    return run_loop(cfg, env, driver, ids, sink);
}

RunReport run_simulation(const SimConfig& cfg, const Environment& env, const Trace& trace,
                         LinkSink& sink) {
    TraceDriver driver(trace);
    return run_loop(cfg, env, driver, trace.vehicle_ids(), sink);
}

RunReport run_simulation(const SimConfig& cfg, LinkSink& sink) {
    cfg.validate();
    if (cfg.mobility_source == MobilitySource::grid) {
        GridSpec spec = cfg.grid;
        spec.seed = cfg.seed;
        GridScenario scenario = generate_grid(spec);
        return run_simulation(cfg, scenario.environment, std::move(scenario.vehicles), sink);
    }
    const Trace trace = Trace::from_csv_file(cfg.trace_file);
    const Environment env = cfg.environment_file.empty()
                                ? Environment{}
                                : Environment::from_xml_file(cfg.environment_file);
    return run_simulation(cfg, env, trace, sink);
}

} // namespace v2x
