#include "simkit/sensor.hpp"

#include <algorithm>
#include <cmath>

#include "simkit/error.hpp"

namespace simkit {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

/// Distance along the ray (p, unit d) to segment [a, b], or a negative
/// value when there is no hit. Parallel rays never hit.
double raySegment(Vec2 p, Vec2 d, Vec2 a, Vec2 b) {
    Vec2 e = b - a;
    double denom = cross(d, e);
    if (denom == 0.0) return -1.0;
    double t = cross(a - p, e) / denom;
    double s = cross(a - p, d) / denom;
    if (t < 0.0 || s < 0.0 || s > 1.0) return -1.0;
    return t;
}

} // namespace

void ScannerMount::validate() const {
    if (!(fovDeg > 0.0) || fovDeg > 360.0) {
        throw Error("scanner fov must be in (0, 360] degrees");
    }
    if (!(resolutionDeg > 0.0) || resolutionDeg > fovDeg) {
        throw Error("scanner resolution must be in (0, fov] degrees");
    }
    if (!(maxRange > 0.0)) {
        throw Error("scanner maxRange must be positive");
    }
}

std::size_t ScannerMount::readingCount() const {
    return static_cast<std::size_t>(std::floor(fovDeg / resolutionDeg + 1e-9)) + 1;
}

ScanResult scan(const std::vector<Segment>& obstacles, const Pose& vehicle,
                const ScannerMount& mount) {
    mount.validate();
    if (!std::isfinite(vehicle.position.x) || !std::isfinite(vehicle.position.y) ||
        !std::isfinite(vehicle.heading)) {
        throw Error("scan: non-finite vehicle pose");
    }

    Vec2 origin = vehicle.position + rotate(mount.offset, vehicle.heading);
    double baseAngle = vehicle.heading + mount.yaw;

    ScanResult result;
    std::size_t n = mount.readingCount();
    result.readings.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double angleDeg = -mount.fovDeg / 2.0 + static_cast<double>(i) * mount.resolutionDeg;
        double angle = angleDeg * kDegToRad;
        double rayAngle = baseAngle + angle;
        Vec2 dir{std::cos(rayAngle), std::sin(rayAngle)};

        double nearest = -1.0;
        for (const auto& seg : obstacles) {
            if (seg.height < mount.height) continue;
            if (seg.a == seg.b) continue;
            double t = raySegment(origin, dir, seg.a, seg.b);
            if (t >= 0.0 && (nearest < 0.0 || t < nearest)) nearest = t;
        }

        ScanReading reading;
        reading.angle = angle;
        if (nearest >= 0.0 && nearest <= mount.maxRange) {
            reading.distance = nearest;
            reading.valid = true;
        } else {
            reading.distance = mount.maxRange;
            reading.valid = false;
        }
        result.readings.push_back(reading);
    }
    return result;
}

void addRangeNoise(ScanResult& result, double sigma, double maxRange,
                   std::mt19937_64& rng) {
    if (sigma <= 0.0) return;
    std::normal_distribution<double> noise(0.0, sigma);
    for (auto& r : result.readings) {
        if (!r.valid) continue;
        r.distance = std::clamp(r.distance + noise(rng), 0.0, maxRange);
    }
}

} // namespace simkit
