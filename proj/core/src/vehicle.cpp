#include "simkit/vehicle.hpp"

#include <algorithm>
#include <cmath>

#include "simkit/error.hpp"

namespace simkit {

VehicleLimits VehicleLimits::fromConfig(const ConfigurationSet& config) {
    VehicleLimits limits;
    limits.wheelbase = config.getDouble("vehicle.wheelbase", limits.wheelbase);
    limits.maxSteering = config.getDouble("vehicle.maxsteering", limits.maxSteering);
    limits.maxAccel = config.getDouble("vehicle.maxaccel", limits.maxAccel);
    limits.maxDecel = config.getDouble("vehicle.maxdecel", limits.maxDecel);
    if (limits.wheelbase <= 0.0 || limits.maxSteering <= 0.0 ||
        limits.maxAccel < 0.0 || limits.maxDecel < 0.0) {
        throw ConfigError("vehicle.* limits must be positive");
    }
    return limits;
}

VehicleState stepKinematic(const VehicleState& state, const VehicleCommand& command,
                           double dtSeconds, const VehicleLimits& limits) {
    if (!(dtSeconds > 0.0) || dtSeconds > 0.1) {
        throw Error("stepKinematic: dt must be in (0, 0.1] s");
    }
    bool finite = std::isfinite(state.position.x) && std::isfinite(state.position.y) &&
                  std::isfinite(state.heading) && std::isfinite(state.speed) &&
                  std::isfinite(command.acceleration) && std::isfinite(command.steeringAngle);
    if (!finite) {
        throw Error("stepKinematic: non-finite state or command");
    }

    double a = std::clamp(command.acceleration, -limits.maxDecel, limits.maxAccel);
    double delta = std::clamp(command.steeringAngle, -limits.maxSteering, limits.maxSteering);

    VehicleState next = state;
    next.position.x += state.speed * std::cos(state.heading) * dtSeconds;
    next.position.y += state.speed * std::sin(state.heading) * dtSeconds;
    next.heading = normalizeAngle(state.heading +
                                  state.speed / limits.wheelbase * std::tan(delta) * dtSeconds);
    next.speed = std::max(0.0, state.speed + a * dtSeconds);
    next.steeringAngle = delta;
    next.timestampUs = state.timestampUs + std::llround(dtSeconds * 1e6);
    return next;
}

PolylinePath::PolylinePath(std::vector<Vec2> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw Error("PolylinePath needs at least one point");
    }
    cumulative_.reserve(points_.size());
    cumulative_.push_back(0.0);
    for (std::size_t i = 1; i < points_.size(); ++i) {
        total_ += distance(points_[i - 1], points_[i]);
        cumulative_.push_back(total_);
    }
}

Pose PolylinePath::poseAt(double s) const {
    if (points_.size() == 1) {
        return Pose{points_.front(), 0.0};
    }
    s = std::clamp(s, 0.0, total_);

    // Index of the segment containing s; the last segment owns s == total.
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
    if (i == 0) i = 1;
    if (i >= points_.size()) i = points_.size() - 1;

    Vec2 a = points_[i - 1];
    Vec2 b = points_[i];
    double segLen = distance(a, b);
    double heading = std::atan2(b.y - a.y, b.x - a.x);
    if (segLen == 0.0) {
        return Pose{a, heading};
    }
    double t = (s - cumulative_[i - 1]) / segLen;
    return Pose{a + t * (b - a), heading};
}

} // namespace simkit
