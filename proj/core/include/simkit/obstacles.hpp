#pragma once

#include <vector>

#include "simkit/geometry.hpp"
#include "simkit/scenario.hpp"

namespace simkit::scn {

/// Circles become regular 16-gons for ray casting.
inline constexpr int kCylinderSegments = 16;

/// Height assigned to dynamic objects' rectangle footprints. The DSL
/// gives objects no vertical extent; 1.5 m (car body height) makes
/// them visible to every hood- or roof-mounted scanner.
inline constexpr double kDynamicObstacleHeight = 1.5;

/// A situation object's footprint at its current pose.
struct DynamicObstacle {
    Rectangle shape;
    Pose pose;
};

/// World-frame rectangle corners, counter-clockwise from front-left.
std::vector<Vec2> rectangleCorners(const Rectangle& shape, const Pose& pose);

/// The scannable world: ground polygons as closed rings, cylinders
/// tessellated, plus each dynamic object's rectangle. Lane markings
/// are paint, not obstacles, and contribute nothing.
std::vector<Segment> extractObstacleGeometry(const ScenarioModel& scenario,
                                             const std::vector<DynamicObstacle>& objects);

} // namespace simkit::scn
