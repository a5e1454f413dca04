#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "simkit/geometry.hpp"

namespace simkit {

/// Single-layer scanner mounted on a vehicle. Angles are degrees in the
/// configuration (how people spec scanners) and radians on the wire.
struct ScannerMount {
    Vec2 offset;               // meters, vehicle frame
    double height = 0.5;       // mounting height above ground, meters
    double yaw = 0.0;          // radians, vehicle frame
    double fovDeg = 180.0;
    double resolutionDeg = 1.0;
    double maxRange = 50.0;    // meters

    /// Throws Error unless 0 < fov <= 360, 0 < resolution <= fov and
    /// maxRange > 0.
    void validate() const;

    /// floor(fov / resolution) + 1, tolerant of fov being an exact
    /// multiple of the resolution in decimal but not in binary.
    std::size_t readingCount() const;
};

struct ScanReading {
    double angle = 0.0;     // radians, scanner frame
    double distance = 0.0;  // meters; == maxRange when not valid
    bool valid = false;

    friend bool operator==(const ScanReading&, const ScanReading&) = default;
};

struct ScanResult {
    std::int32_t scannerId = 0;
    std::int32_t vehicleId = 0;
    std::int64_t timestampUs = 0;
    std::vector<ScanReading> readings;

    friend bool operator==(const ScanResult&, const ScanResult&) = default;
};

/// Casts one ray per angle from -fov/2 to +fov/2 against every obstacle
/// segment at least as tall as the mounting height. Ray origin is the
/// mount offset in the world frame; ray direction is vehicle heading +
/// mount yaw + ray angle. Zero-length segments are skipped.
ScanResult scan(const std::vector<Segment>& obstacles, const Pose& vehicle,
                const ScannerMount& mount);

/// Adds zero-mean Gaussian range noise to the valid readings, clamped
/// to [0, maxRange]. Invalid readings stay pinned at maxRange.
void addRangeNoise(ScanResult& result, double sigma, double maxRange,
                   std::mt19937_64& rng);

} // namespace simkit
