#pragma once

#include <cstdint>
#include <vector>

#include "core/config.hpp"
#include "core/environment.hpp"
#include "core/mobility.hpp"

namespace v2x {

// Receives every link outcome as the run produces them. Sink time is excluded
// from the reported wall time, so a sink may write to disk.
class LinkSink {
public:
    virtual ~LinkSink() = default;
    virtual void on_result(double time_s, const LinkResult& result) = 0;
};

class NullSink final : public LinkSink {
public:
    void on_result(double, const LinkResult&) override {}
};

class CollectSink final : public LinkSink {
public:
    struct Row {
        double time_s;
        LinkResult result;
    };
    std::vector<Row> rows;

    void on_result(double time_s, const LinkResult& result) override {
        rows.push_back({time_s, result});
    }
};

struct RunReport {
    EvalStats stats;
    std::uint64_t transmissions = 0;
    std::uint64_t link_results = 0;
    double wall_time_s = 0.0;
    SimConfig config; // resolved echo
};

// Periodic broadcast round loop: every vehicle beacons once per
// beacon_interval for floor(sim_duration / interval) rounds; each beacon is
// evaluated against all other vehicles at the beacon's exact time. The
// evaluation pool is created once per run. Deterministic for a fixed config:
// the result stream is identical for every worker count.
//
// Reported wall time covers mobility stepping and link evaluation; sink
// invocations and scenario construction are excluded.
RunReport run_simulation(const SimConfig& cfg, LinkSink& sink);

// Same loop over an injected scenario; cfg mobility settings are ignored
// except for timing, radio, loss model and pool.
RunReport run_simulation(const SimConfig& cfg, const Environment& env,
                         std::vector<Vehicle> vehicles, LinkSink& sink);

// Trace-driven variant: positions come from the trace, piecewise-constant.
RunReport run_simulation(const SimConfig& cfg, const Environment& env, const Trace& trace,
                         LinkSink& sink);

} // namespace v2x
