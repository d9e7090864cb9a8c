#include "core/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "core/error.hpp"

namespace v2x {

void GridSpec::validate() const {
    if (!(map_side_m >= road_spacing_m))
        fail(ErrorCode::spec, "map_side_m must be >= road_spacing_m");
    if (!(road_spacing_m > 0.0))
        fail(ErrorCode::spec, "road_spacing_m must be > 0");
    if (lanes_per_road < 1)
        fail(ErrorCode::spec, "lanes_per_road must be >= 1");
    if (!(lane_width_m > 0.0))
        fail(ErrorCode::spec, "lane_width_m must be > 0");
    if (!(road_spacing_m > lanes_per_road * lane_width_m))
        fail(ErrorCode::spec, "road_spacing_m must exceed the total road width");
    if (building_setback_m < 0.0)
        fail(ErrorCode::spec, "building_setback_m must be >= 0");
    if (!(building_height_m > 0.0))
        fail(ErrorCode::spec, "building_height_m must be > 0");
    if (vehicle_count < 0)
        fail(ErrorCode::spec, "vehicle_count must be >= 0");
    if (!(speed_min_mps >= 0.0) || !(speed_max_mps >= speed_min_mps))
        fail(ErrorCode::spec, "need 0 <= speed_min_mps <= speed_max_mps");
    if (!(building_side_m() > 0.0))
        fail(ErrorCode::spec, "infeasible grid: building side would be <= 0");
}

namespace {

// Uniform double in [0, 1) from the top 53 bits of one generator draw; avoids
// std::uniform_real_distribution so placements are identical across standard
// libraries.
double next_u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double wrap(double value, double period) {
    double w = std::fmod(value, period);
    if (w < 0.0) w += period;
    return w;
}

} // namespace

GridScenario generate_grid(const GridSpec& spec) {
    spec.validate();

    const double spacing = spec.road_spacing_m;
    const int blocks = static_cast<int>(std::floor(spec.map_side_m / spacing + 1e-9));
    const double half_road = spec.lanes_per_road * spec.lane_width_m / 2.0;
    const double side = spec.building_side_m();
    const double margin = half_road + spec.building_setback_m;

    std::vector<std::pair<Prism, std::string>> obstacles;
    obstacles.reserve(static_cast<std::size_t>(blocks) * static_cast<std::size_t>(blocks));
    for (int by = 0; by < blocks; ++by)
        for (int bx = 0; bx < blocks; ++bx)
            obstacles.emplace_back(Prism::box(bx * spacing + margin, by * spacing + margin, 0.0,
                                              side, side, spec.building_height_m),
                                   "concrete");

    GridScenario scenario{Environment(std::move(obstacles),
                                      {Material{"concrete", 5.0, 0.02}}),
                          {}};
    scenario.environment.set_bounds(
        {{0.0, 0.0, 0.0}, {spec.map_side_m, spec.map_side_m, spec.building_height_m}});

    std::mt19937_64 rng(spec.seed);
    scenario.vehicles.reserve(static_cast<std::size_t>(spec.vehicle_count));
    for (int i = 0; i < spec.vehicle_count; ++i) {
        const bool horizontal = (rng() & 1u) != 0;
        const int road = static_cast<int>(rng() % static_cast<std::uint64_t>(blocks));
        const int lane = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.lanes_per_road));
        const double along = next_u01(rng) * spec.map_side_m;
        const double speed = spec.speed_min_mps + next_u01(rng) * (spec.speed_max_mps - spec.speed_min_mps);

        const double lane_offset = (lane + 0.5) * spec.lane_width_m - half_road;
        const double cross = wrap(road * spacing + lane_offset, spec.map_side_m);
        const double direction = lane < (spec.lanes_per_road + 1) / 2 ? 1.0 : -1.0;

        Vehicle v;
        v.id = i;
        if (horizontal) {
            v.position = {along, cross, spec.antenna_height_m};
            v.velocity = {direction * speed, 0.0, 0.0};
        } else {
            v.position = {cross, along, spec.antenna_height_m};
            v.velocity = {0.0, direction * speed, 0.0};
        }
        scenario.vehicles.push_back(v);
    }
    return scenario;
}

void step_positions(std::vector<Vehicle>& vehicles, double dt_s, const Aabb& bounds) {
    if (!(dt_s > 0.0))
        fail(ErrorCode::argument, "step_positions requires dt > 0");
    const double side_x = bounds.hi.x - bounds.lo.x;
    const double side_y = bounds.hi.y - bounds.lo.y;
    for (Vehicle& v : vehicles) {
        v.position.x = side_x > 0.0
                           ? bounds.lo.x + wrap(v.position.x + v.velocity.x * dt_s - bounds.lo.x, side_x)
                           : v.position.x + v.velocity.x * dt_s;
        v.position.y = side_y > 0.0
                           ? bounds.lo.y + wrap(v.position.y + v.velocity.y * dt_s - bounds.lo.y, side_y)
                           : v.position.y + v.velocity.y * dt_s;
        v.position.z += v.velocity.z * dt_s;
    }
}

namespace {

constexpr std::string_view kTraceHeader = "time_s,vehicle_id,x_m,y_m,z_m";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_trace_number(const std::string& text, std::size_t line_no, const char* field) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        fail(ErrorCode::parse,
             "trace line " + std::to_string(line_no) + ": bad " + field + " \"" + text + "\"");
    }
    if (used != text.size() || !std::isfinite(value))
        fail(ErrorCode::parse,
             "trace line " + std::to_string(line_no) + ": bad " + field + " \"" + text + "\"");
    return value;
}

} // namespace

Trace Trace::from_csv_string(std::string_view text) {
    Trace trace;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (!saw_header) {
            if (line != kTraceHeader)
                fail(ErrorCode::parse, "trace line " + std::to_string(line_no) +
                                           ": expected header \"" + std::string(kTraceHeader) + "\"");
            saw_header = true;
            continue;
        }

        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 5)
            fail(ErrorCode::parse, "trace line " + std::to_string(line_no) + ": expected 5 fields, got " +
                                       std::to_string(fields.size()));

        const double t = parse_trace_number(fields[0], line_no, "time_s");
        const double id_raw = parse_trace_number(fields[1], line_no, "vehicle_id");
        const auto id = static_cast<std::int32_t>(id_raw);
        if (static_cast<double>(id) != id_raw)
            fail(ErrorCode::parse,
                 "trace line " + std::to_string(line_no) + ": vehicle_id must be an integer");
        const Vec3 pos{parse_trace_number(fields[2], line_no, "x_m"),
                       parse_trace_number(fields[3], line_no, "y_m"),
                       parse_trace_number(fields[4], line_no, "z_m")};

        if (trace.tracks_.empty() || trace.tracks_.back().id != id) {
            if (!trace.tracks_.empty() && id < trace.tracks_.back().id)
                fail(ErrorCode::parse, "trace line " + std::to_string(line_no) +
                                           ": rows not sorted by (vehicle_id, time_s)");
            trace.tracks_.push_back({id, {}});
        } else if (!(t > trace.tracks_.back().samples.back().time_s)) {
            fail(ErrorCode::parse, "trace line " + std::to_string(line_no) +
                                       ": non-monotone time for vehicle " + std::to_string(id));
        }
        trace.tracks_.back().samples.push_back({t, pos});
        trace.max_time_s_ = std::max(trace.max_time_s_, t);
    }
    return trace;
}

Trace Trace::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::io, "cannot open trace file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_csv_string(buffer.str());
}

std::vector<std::int32_t> Trace::vehicle_ids() const {
    std::vector<std::int32_t> ids;
    ids.reserve(tracks_.size());
    for (const Track& track : tracks_) ids.push_back(track.id);
    return ids;
}

std::vector<Vehicle> Trace::positions_at(double time_s) const {
    std::vector<Vehicle> vehicles;
    vehicles.reserve(tracks_.size());
    for (const Track& track : tracks_) {
        const auto after = std::upper_bound(
            track.samples.begin(), track.samples.end(), time_s,
            [](double t, const Sample& s) { return t < s.time_s; });
        if (after == track.samples.begin()) continue; // not yet present
        const Sample& current = *(after - 1);
        vehicles.push_back({track.id, current.position, {0.0, 0.0, 0.0}});
    }
    return vehicles;
}

} // namespace v2x
