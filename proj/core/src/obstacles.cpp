#include "simkit/obstacles.hpp"

#include <cmath>

namespace simkit::scn {

namespace {

void closedRing(const std::vector<Vec2>& vertices, double height,
                std::vector<Segment>& out) {
    std::size_t n = vertices.size();
    if (n < 2) return;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(Segment{vertices[i], vertices[(i + 1) % n], height});
    }
}

} // namespace

std::vector<Vec2> rectangleCorners(const Rectangle& shape, const Pose& pose) {
    double hl = shape.length / 2.0;
    double hw = shape.width / 2.0;
    std::vector<Vec2> corners{{hl, hw}, {-hl, hw}, {-hl, -hw}, {hl, -hw}};
    for (auto& c : corners) {
        c = pose.position + rotate(c, pose.heading);
    }
    return corners;
}

std::vector<Segment> extractObstacleGeometry(const ScenarioModel& scenario,
                                             const std::vector<DynamicObstacle>& objects) {
    std::vector<Segment> out;

    for (const auto& p : scenario.polygons) {
        closedRing(p.vertices, p.height, out);
    }

    for (const auto& c : scenario.cylinders) {
        std::vector<Vec2> ring;
        ring.reserve(kCylinderSegments);
        for (int k = 0; k < kCylinderSegments; ++k) {
            double a = 2.0 * M_PI * static_cast<double>(k) / kCylinderSegments;
            ring.push_back(c.center + Vec2{c.radius * std::cos(a),
                                           c.radius * std::sin(a)});
        }
        closedRing(ring, c.height, out);
    }

    for (const auto& o : objects) {
        closedRing(rectangleCorners(o.shape, o.pose), kDynamicObstacleHeight, out);
    }

    return out;
}

} // namespace simkit::scn
