#pragma once

#include <span>
#include <string>

#include "core/geometry.hpp"

namespace v2x {

inline constexpr double kSpeedOfLightMps = 299'792'458.0;

// Lossy dielectric wall material. relative_permittivity must exceed 1 and
// loss_tangent must be non-negative; validate() throws Error(argument).
struct Material {
    std::string name;
    double relative_permittivity = 0.0;
    double loss_tangent = 0.0;

    void validate() const;
};

// Linear power ratio applied by obstacles on one link. blocked implies
// power_factor == 0.
struct LossFactor {
    double power_factor = 1.0;
    bool blocked = false;
};

struct ObstacleHit {
    Intersection intersection;
    const Material* material = nullptr;
};

// Binary blocking model: any intersection kills the signal entirely.
LossFactor ideal_loss(std::span<const ObstacleHit> hits);

// Plane-wave power attenuation exp(-atan(tan_delta) * 2*pi*f*chord / v) with
// propagation speed v = c / sqrt(eps_r).
double dielectric_traversal_factor(const Material& mat, double frequency_hz, double chord_m);

// Normal-incidence Fresnel power transmission through the entry and exit
// faces of one obstacle: T^2 with T = 1 - ((1 - sqrt(eps_r)) / (1 + sqrt(eps_r)))^2.
double reflection_factor(const Material& mat);

// Material-based attenuation: product of traversal and reflection factors over
// all hits, combined in ascending obstacle_id so permuted inputs give
// bit-identical results. Never reports blocked; the link budget decides
// deliverability.
LossFactor dielectric_loss(std::span<const ObstacleHit> hits, double frequency_hz);

} // namespace v2x
