#include "core/obstacle_loss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace v2x {

void Material::validate() const {
    if (name.empty())
        fail(ErrorCode::argument, "material name must not be empty");
    if (!(relative_permittivity > 1.0) || !std::isfinite(relative_permittivity))
        fail(ErrorCode::argument,
             "material \"" + name + "\": relative permittivity must be > 1");
    if (!(loss_tangent >= 0.0) || !std::isfinite(loss_tangent))
        fail(ErrorCode::argument, "material \"" + name + "\": loss tangent must be >= 0");
}

LossFactor ideal_loss(std::span<const ObstacleHit> hits) {
    if (hits.empty()) return {1.0, false};
    return {0.0, true};
}

double dielectric_traversal_factor(const Material& mat, double frequency_hz, double chord_m) {
    const double speed = kSpeedOfLightMps / std::sqrt(mat.relative_permittivity);
    return std::exp(-std::atan(mat.loss_tangent) *
                    2.0 * std::numbers::pi * frequency_hz * chord_m / speed);
}

double reflection_factor(const Material& mat) {
    const double n = std::sqrt(mat.relative_permittivity);
    const double r = (1.0 - n) / (1.0 + n);
    const double t = 1.0 - r * r;
    return t * t;
}

LossFactor dielectric_loss(std::span<const ObstacleHit> hits, double frequency_hz) {
    // Canonical order: floating multiplication is not associative, so the
    // product is always taken in ascending obstacle_id.
    std::vector<std::size_t> order(hits.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&hits](std::size_t l, std::size_t r) {
        return hits[l].intersection.obstacle_id < hits[r].intersection.obstacle_id;
    });

    double factor = 1.0;
    for (std::size_t i : order) {
        const ObstacleHit& hit = hits[i];
        factor *= dielectric_traversal_factor(*hit.material, frequency_hz,
                                              hit.intersection.chord_length);
        factor *= reflection_factor(*hit.material);
    }
    return {factor, false};
}

} // namespace v2x
