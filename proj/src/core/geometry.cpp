#include "core/geometry.hpp"

#include <algorithm>
#include <limits>

#include "core/error.hpp"

namespace v2x {

double distance(const Vec3& a, const Vec3& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

namespace {

bool finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

void validate_footprint(const std::vector<Vec2>& pts) {
    if (pts.size() < 3)
        fail(ErrorCode::geometry, "prism footprint needs at least 3 vertices");

    double scale = 0.0;
    for (const Vec2& p : pts) {
        if (!finite(p)) fail(ErrorCode::geometry, "prism footprint has non-finite vertex");
        scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    }
    const double eps = 1e-12 * std::max(1.0, scale * scale);

    double signed_area2 = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p0 = pts[i];
        const Vec2& p1 = pts[(i + 1) % n];
        const Vec2& p2 = pts[(i + 2) % n];
        if (p0.x == p1.x && p0.y == p1.y)
            fail(ErrorCode::geometry, "prism footprint has repeated vertices");
        const double turn = cross(p1 - p0, p2 - p1);
        if (turn < -eps)
            fail(ErrorCode::geometry, "prism footprint is not convex");
        signed_area2 += cross(p0, p1);
    }
    if (signed_area2 <= eps)
        fail(ErrorCode::geometry, "prism footprint must be counter-clockwise with positive area");
}

} // namespace

Prism::Prism(std::vector<Vec2> footprint, double base_z, double height)
    : footprint_(std::move(footprint)), base_z_(base_z), height_(height) {
    validate_footprint(footprint_);
    if (!std::isfinite(base_z_)) fail(ErrorCode::geometry, "prism base_z must be finite");
    if (!(height_ > 0.0) || !std::isfinite(height_))
        fail(ErrorCode::geometry, "prism height must be positive");

    double lo_x = std::numeric_limits<double>::infinity();
    double lo_y = lo_x;
    double hi_x = -lo_x;
    double hi_y = -lo_x;
    for (const Vec2& p : footprint_) {
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
    }
    aabb_ = {{lo_x, lo_y, base_z_}, {hi_x, hi_y, base_z_ + height_}};
}

Prism Prism::box(double min_x, double min_y, double min_z,
                 double size_x, double size_y, double size_z) {
    return Prism({{min_x, min_y},
                  {min_x + size_x, min_y},
                  {min_x + size_x, min_y + size_y},
                  {min_x, min_y + size_y}},
                 min_z, size_z);
}

std::optional<Intersection> segment_prism_intersection(const Segment& seg, const Prism& prism) {
    if (seg.a == seg.b)
        fail(ErrorCode::argument, "degenerate segment: endpoints coincide");

    double t0 = 0.0;
    double t1 = 1.0;

    // Clip [t0, t1] against the half-space num + t*den >= 0.
    const auto clip = [&t0, &t1](double num, double den) -> bool {
        if (den == 0.0) return num >= 0.0;
        const double t = -num / den;
        if (den > 0.0) {
            if (t > t0) t0 = t;
        } else {
            if (t < t1) t1 = t;
        }
        return t0 <= t1;
    };

    const double dz = seg.b.z - seg.a.z;
    if (!clip(seg.a.z - prism.base_z(), dz)) return std::nullopt;
    if (!clip(prism.base_z() + prism.height() - seg.a.z, -dz)) return std::nullopt;

    const Vec2 a2{seg.a.x, seg.a.y};
    const Vec2 d2{seg.b.x - seg.a.x, seg.b.y - seg.a.y};
    const auto& pts = prism.footprint();
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& v = pts[i];
        const Vec2 e = pts[(i + 1) % n] - v;
        const Vec2 normal{-e.y, e.x}; // inward for a counter-clockwise footprint
        if (!clip(dot(normal, a2 - v), dot(normal, d2))) return std::nullopt;
    }

    const double length = distance(seg.a, seg.b);
    const double chord = length * (t1 - t0);
    if (chord < kGrazingEpsilonM) return std::nullopt;
    return Intersection{-1, t0, t1, chord};
}

} // namespace v2x
