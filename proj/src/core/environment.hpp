#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/geometry.hpp"
#include "core/obstacle_loss.hpp"
#include "core/radio_medium.hpp"
#include "core/types.hpp"
#include "core/worker_pool.hpp"

namespace v2x {

// Immutable obstacle store. Obstacle ids are dense 0..m-1 in construction
// (document) order; every obstacle references a material by name, resolved at
// construction. Shareable across any number of evaluation workers.
class Environment {
public:
    Environment() = default;

    Environment(std::vector<std::pair<Prism, std::string>> obstacles,
                std::vector<Material> materials);

    // Obstacle XML:
    //   <environment>
    //     <material name="brick" permittivity="4.5" lossTangent="0.02"/>
    //     <object type="cuboid" position="2.5 2.5 0" size="95 95 10" material="brick"/>
    //   </environment>
    // position is the min corner, size the extents, both in meters. Unknown
    // elements and attributes are rejected.
    static Environment from_xml_file(const std::string& path);
    static Environment from_xml_string(std::string_view xml);

    std::size_t obstacle_count() const noexcept { return prisms_.size(); }
    std::size_t material_count() const noexcept { return materials_.size(); }
    const Prism& prism(std::size_t obstacle_id) const { return prisms_[obstacle_id]; }
    const Material& material_of(std::size_t obstacle_id) const {
        return materials_[material_index_[obstacle_id]];
    }
    const std::vector<Material>& materials() const noexcept { return materials_; }
    std::span<const Aabb> obstacle_aabbs() const noexcept { return obstacle_aabbs_; }

    // Union of the obstacle boxes unless a wider extent was set explicitly.
    const Aabb& bounds() const noexcept { return bounds_; }
    void set_bounds(const Aabb& bounds) { bounds_ = bounds; }

    // Structure-of-arrays view of the obstacle boxes for the scan hot path.
    struct BoxArrays {
        std::vector<double> lo_x, hi_x, lo_y, hi_y, lo_z, hi_z;
    };
    const BoxArrays& boxes() const noexcept { return boxes_; }

private:
    std::vector<Prism> prisms_;
    std::vector<std::uint32_t> material_index_;
    std::vector<Aabb> obstacle_aabbs_;
    BoxArrays boxes_;
    std::vector<Material> materials_;
    Aabb bounds_{};
};

// Linear scan over all obstacles, ascending obstacle_id. Increments
// stats.obstacle_tests by the obstacle count and stats.intersections_found by
// the number of hits.
std::vector<ObstacleHit> scan_intersections(const Environment& env, const Segment& seg,
                                            EvalStats& stats);

// Evaluates one beacon against every receiver: boundary cull first, then scan,
// obstacle loss, link budget and deliverability. Results ordered by rx_id.
// The receiver list must not contain the transmitter.
std::vector<LinkResult> evaluate_links_sequential(const Environment& env, const Transmission& tx,
                                                  std::span<const Vehicle> receivers,
                                                  const RadioConfig& cfg, LossModel model,
                                                  EvalStats& stats);

// Same contract and bit-identical results for every worker count. Receivers
// are split into static blocks, one per worker; per-worker counters are summed
// after the join.
std::vector<LinkResult> evaluate_links_parallel(const Environment& env, const Transmission& tx,
                                                std::span<const Vehicle> receivers,
                                                const RadioConfig& cfg, LossModel model,
                                                WorkerPool& pool, EvalStats& stats);

// Convenience overload with a transient pool.
std::vector<LinkResult> evaluate_links_parallel(const Environment& env, const Transmission& tx,
                                                std::span<const Vehicle> receivers,
                                                const RadioConfig& cfg, LossModel model,
                                                const WorkerPoolConfig& pool_cfg,
                                                EvalStats& stats);

} // namespace v2x
