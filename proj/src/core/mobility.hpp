#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/environment.hpp"
#include "core/types.hpp"

namespace v2x {

// Synthetic grid city: roads every road_spacing in both axes, one building
// per block, vehicles on lane centerlines with axis-aligned constant speeds.
// Building side is derived as
//   road_spacing - lanes_per_road*lane_width - 2*building_setback
// so lanes never touch building footprints.
struct GridSpec {
    double map_side_m = 2000.0;
    double road_spacing_m = 100.0;
    int lanes_per_road = 2;
    double lane_width_m = 3.2;
    double building_setback_m = 0.5;
    double building_height_m = 10.0;
    double antenna_height_m = 1.5;
    double speed_min_mps = 8.0;
    double speed_max_mps = 14.0;
    int vehicle_count = 100;
    std::uint64_t seed = 1;

    double building_side_m() const {
        return road_spacing_m - lanes_per_road * lane_width_m - 2.0 * building_setback_m;
    }

    void validate() const; // throws Error(spec)
};

struct GridScenario {
    Environment environment;
    std::vector<Vehicle> vehicles;
};

// Deterministic for a fixed spec: identical seeds give bit-identical
// environments and placements.
GridScenario generate_grid(const GridSpec& spec);

// Advances positions by velocity*dt; vehicles leaving the map extent wrap to
// the opposite edge on the same lane.
void step_positions(std::vector<Vehicle>& vehicles, double dt_s, const Aabb& bounds);

// Time-indexed positions loaded from a CSV trace with the exact header
//   time_s,vehicle_id,x_m,y_m,z_m
// rows sorted by (vehicle_id, time_s). Positions are piecewise-constant: a
// sample holds until the vehicle's next one; a vehicle exists from its first
// sample onward.
class Trace {
public:
    static Trace from_csv_file(const std::string& path);
    static Trace from_csv_string(std::string_view text);

    bool empty() const noexcept { return tracks_.empty(); }
    std::size_t vehicle_count() const noexcept { return tracks_.size(); }
    double max_time_s() const noexcept { return max_time_s_; }

    // Vehicles present at time t (first sample <= t), ascending id.
    std::vector<Vehicle> positions_at(double time_s) const;

    // All vehicle ids in the trace, ascending.
    std::vector<std::int32_t> vehicle_ids() const;

private:
    struct Sample {
        double time_s;
        Vec3 position;
    };
    struct Track {
        std::int32_t id;
        std::vector<Sample> samples;
    };
    std::vector<Track> tracks_;
    double max_time_s_ = 0.0;
};

} // namespace v2x
