#pragma once

#include <cmath>
#include <vector>

namespace simkit {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend constexpr Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

/// Rotates v by `angle` radians counter-clockwise.
inline Vec2 rotate(Vec2 v, double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Wraps an angle into (-pi, pi].
inline double normalizeAngle(double a) {
    a = std::fmod(a + M_PI, 2.0 * M_PI);
    if (a <= 0.0) a += 2.0 * M_PI;
    return a - M_PI;
}

struct Pose {
    Vec2 position;
    double heading = 0.0;

    friend constexpr bool operator==(const Pose&, const Pose&) = default;
};

/// Obstacle edge in the world frame. `height` is the obstacle's extent
/// above ground; a scanner only sees segments at least as tall as its
/// mounting height.
struct Segment {
    Vec2 a;
    Vec2 b;
    double height = 0.0;

    friend constexpr bool operator==(const Segment&, const Segment&) = default;
};

/// Distance from p to the closed segment [a, b].
inline double pointSegmentDistance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    double t = dot(p - a, ab) / len2;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return distance(p, a + t * ab);
}

/// Even-odd rule point-in-polygon test against the ring's implied closing
/// edge. Points exactly on an edge may land on either side.
inline bool pointInPolygon(Vec2 p, const std::vector<Vec2>& ring) {
    bool inside = false;
    std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        Vec2 a = ring[j];
        Vec2 b = ring[i];
        bool crosses = (b.y > p.y) != (a.y > p.y);
        if (crosses && p.x < (a.x - b.x) * (p.y - b.y) / (a.y - b.y) + b.x) {
            inside = !inside;
        }
    }
    return inside;
}

} // namespace simkit
