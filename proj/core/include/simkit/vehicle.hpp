#pragma once

#include <cstdint>
#include <vector>

#include "simkit/config.hpp"
#include "simkit/geometry.hpp"

namespace simkit {

struct VehicleState {
    Vec2 position;
    double heading = 0.0;        // radians, (-pi, pi]
    double speed = 0.0;          // m/s, never negative
    double steeringAngle = 0.0;  // radians
    std::int64_t timestampUs = 0;

    friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

struct VehicleCommand {
    double acceleration = 0.0;   // m/s^2
    double steeringAngle = 0.0;  // radians, setpoint

    friend bool operator==(const VehicleCommand&, const VehicleCommand&) = default;
};

/// Model parameters. Defaults are a Passat-class car; overridable via
/// the vehicle.* config keys.
struct VehicleLimits {
    double wheelbase = 2.65;   // m
    double maxSteering = 0.5;  // rad
    double maxAccel = 4.0;     // m/s^2
    double maxDecel = 8.0;     // m/s^2, magnitude

    static VehicleLimits fromConfig(const ConfigurationSet& config);
};

/// One forward-Euler step of the kinematic bicycle model
///   xdot = v cos(theta), ydot = v sin(theta),
///   thetadot = (v / L) tan(delta), vdot = a.
/// Position integrates with the pre-step speed and heading. The command
/// is clamped to the limits before integration; the steering setpoint
/// takes effect immediately. Requires 0 < dt <= 0.1 s and finite inputs.
VehicleState stepKinematic(const VehicleState& state, const VehicleCommand& command,
                           double dtSeconds, const VehicleLimits& limits = {});

/// Piecewise-linear route geometry addressed by arc length, for
/// scripted waypoint followers.
class PolylinePath {
public:
    explicit PolylinePath(std::vector<Vec2> points);

    double length() const { return total_; }
    const std::vector<Vec2>& points() const { return points_; }

    /// Pose at arc length s, clamped to [0, length]. Heading is the
    /// direction of the segment containing s (the final segment's
    /// direction at and beyond the end).
    Pose poseAt(double s) const;

private:
    std::vector<Vec2> points_;
    std::vector<double> cumulative_;  // arc length at each vertex
    double total_ = 0.0;
};

} // namespace simkit
