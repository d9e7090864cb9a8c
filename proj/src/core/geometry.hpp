#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace v2x {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
inline bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

double distance(const Vec3& a, const Vec3& b);

// Transmitter-to-receiver propagation path.
struct Segment {
    Vec3 a;
    Vec3 b;
};

struct Aabb {
    Vec3 lo;
    Vec3 hi;

    // Bitwise & keeps the broad-phase scan branch-free; the miss rate there
    // is high and data-dependent, so short-circuiting would mispredict.
    bool overlaps(const Aabb& other) const {
        return (lo.x <= other.hi.x) & (other.lo.x <= hi.x) &
               (lo.y <= other.hi.y) & (other.lo.y <= hi.y) &
               (lo.z <= other.hi.z) & (other.lo.z <= hi.z);
    }

    void expand(const Aabb& other) {
        lo.x = std::min(lo.x, other.lo.x);
        lo.y = std::min(lo.y, other.lo.y);
        lo.z = std::min(lo.z, other.lo.z);
        hi.x = std::max(hi.x, other.hi.x);
        hi.y = std::max(hi.y, other.hi.y);
        hi.z = std::max(hi.z, other.hi.z);
    }

    static Aabb of_segment(const Segment& s) {
        return {{std::min(s.a.x, s.b.x), std::min(s.a.y, s.b.y), std::min(s.a.z, s.b.z)},
                {std::max(s.a.x, s.b.x), std::max(s.a.y, s.b.y), std::max(s.a.z, s.b.z)}};
    }
};

// Convex footprint extruded along +z. The footprint must be counter-clockwise,
// convex, without repeated vertices; construction validates and throws
// Error(ErrorCode::geometry) otherwise.
class Prism {
public:
    Prism(std::vector<Vec2> footprint, double base_z, double height);

    const std::vector<Vec2>& footprint() const noexcept { return footprint_; }
    double base_z() const noexcept { return base_z_; }
    double height() const noexcept { return height_; }
    const Aabb& aabb() const noexcept { return aabb_; }

    static Prism box(double min_x, double min_y, double min_z,
                     double size_x, double size_y, double size_z);

private:
    std::vector<Vec2> footprint_;
    double base_z_ = 0.0;
    double height_ = 0.0;
    Aabb aabb_{};
};

// One obstacle traversal: the parametric interval [entry_t, exit_t] of the
// segment inside the prism and the corresponding chord length in meters.
struct Intersection {
    std::int32_t obstacle_id = -1; // assigned by the environment scan
    double entry_t = 0.0;
    double exit_t = 0.0;
    double chord_length = 0.0;
};

// Traversal intervals shorter than this are treated as tangential grazing and
// reported as no intersection.
inline constexpr double kGrazingEpsilonM = 1e-9;

// Parametric clipping of the segment against the z slab and the footprint
// half-planes. Returns the traversal interval, or nullopt when the segment
// misses the prism or only grazes it.
std::optional<Intersection> segment_prism_intersection(const Segment& seg, const Prism& prism);

} // namespace v2x
