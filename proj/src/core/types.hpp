#pragma once

#include <cstdint>

#include "core/geometry.hpp"

namespace v2x {

struct Vehicle {
    std::int32_t id = 0;
    Vec3 position;
    Vec3 velocity;
};

// One broadcast beacon.
struct Transmission {
    std::int32_t tx_id = 0;
    Vec3 position;
    double time_s = 0.0;
    std::uint32_t message_length_bytes = 0;
};

enum class LossModel { ideal, dielectric };

// Instrumentation counters that make the scan volume observable.
// obstacle_tests counts every obstacle considered by a scan (the broad-phase
// prefilter does not reduce it), so a full uncalled beacon round contributes
// exactly n*(n-1)*m.
struct EvalStats {
    std::uint64_t links_considered = 0;
    std::uint64_t links_culled = 0;
    std::uint64_t obstacle_tests = 0;
    std::uint64_t intersections_found = 0;

    EvalStats& operator+=(const EvalStats& o) {
        links_considered += o.links_considered;
        links_culled += o.links_culled;
        obstacle_tests += o.obstacle_tests;
        intersections_found += o.intersections_found;
        return *this;
    }
};

inline bool operator==(const EvalStats& a, const EvalStats& b) {
    return a.links_considered == b.links_considered && a.links_culled == b.links_culled &&
           a.obstacle_tests == b.obstacle_tests && a.intersections_found == b.intersections_found;
}

struct WorkerPoolConfig {
    int worker_count = 1; // 1 = sequential baseline
};

} // namespace v2x
