#include "simkit/validators.hpp"

#include <cstdio>

#include "simkit/error.hpp"
#include "simkit/messages.hpp"

namespace simkit {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string pointText(Vec2 p) {
    return "(" + fixed6(p.x) + ", " + fixed6(p.y) + ")";
}

} // namespace

std::optional<TraceSample> traceSampleFrom(const Container& c) {
    if (c.dataTypeId != msg::kVehicleState) return std::nullopt;
    auto [vehicleId, state] = msg::parseVehicleState(c);
    TraceSample s;
    s.vehicleId = vehicleId;
    s.position = state.position;
    s.heading = state.heading;
    s.timestampUs = state.timestampUs;
    return s;
}

void Validator::onSample(const TraceSample& sample) {
    if (finalized()) return;
    if (sample.vehicleId != vehicleId_) return;
    evaluate(sample);
}

void Validator::finish(std::int64_t endTimeUs) {
    if (finalized()) return;
    onFinish(endTimeUs);
    if (!finalized()) {
        // Pessimistic default: no validator may stay pending past the
        // run's end.
        fail(endTimeUs, "still pending at run end");
    }
}

void Validator::pass(std::int64_t atUs, std::string detail) {
    if (finalized()) return;
    verdict_ = Verdict{name(), vehicleId_, true, atUs, std::move(detail)};
}

void Validator::fail(std::int64_t atUs, std::string detail) {
    if (finalized()) return;
    verdict_ = Verdict{name(), vehicleId_, false, atUs, std::move(detail)};
}

DestinationReachedValidator::DestinationReachedValidator(std::int32_t vehicleId,
                                                         Vec2 destination, double radius)
    : Validator(vehicleId), destination_(destination), radius_(radius) {
    if (!(radius > 0.0)) throw Error("destination radius must be positive");
}

void DestinationReachedValidator::evaluate(const TraceSample& sample) {
    double d = distance(sample.position, destination_);
    if (d <= radius_) {
        pass(sample.timestampUs, "reached " + pointText(destination_) + " distance=" +
                                     fixed6(d) + " t=" +
                                     std::to_string(sample.timestampUs));
    }
}

void DestinationReachedValidator::onFinish(std::int64_t endTimeUs) {
    fail(endTimeUs, "never within radius=" + fixed6(radius_) + " of " +
                        pointText(destination_));
}

ShortestRouteChosenValidator::ShortestRouteChosenValidator(
    std::int32_t vehicleId, const scn::RouteGraph& graph, const scn::WaypointId& from,
    const scn::WaypointId& to, double passRadius)
    : Validator(vehicleId), passRadius_(passRadius) {
    if (!(passRadius > 0.0)) throw Error("pass radius must be positive");
    auto route = shortestRoute(graph, from, to);
    if (!route) {
        throw Error("no route from " + from.str() + " to " + to.str() +
                    "; cannot supervise route choice");
    }
    route_ = std::move(route->waypoints);
    positions_ = polylineFromWaypoints(graph, route_);
}

void ShortestRouteChosenValidator::evaluate(const TraceSample& sample) {
    // One sample may clear several closely spaced waypoints.
    while (nextIndex_ < route_.size() &&
           distance(sample.position, positions_[nextIndex_]) <= passRadius_) {
        ++nextIndex_;
    }
    if (nextIndex_ == route_.size()) {
        pass(sample.timestampUs,
             "passed all " + std::to_string(route_.size()) + " waypoints");
    }
}

void ShortestRouteChosenValidator::onFinish(std::int64_t endTimeUs) {
    fail(endTimeUs, "first unmet waypoint " + route_[nextIndex_].str() + " (" +
                        std::to_string(nextIndex_) + " of " +
                        std::to_string(route_.size()) + " passed)");
}

DistanceToRouteValidator::DistanceToRouteValidator(std::int32_t vehicleId,
                                                   std::vector<Vec2> polyline,
                                                   double maxDeviation)
    : Validator(vehicleId), polyline_(std::move(polyline)), maxDeviation_(maxDeviation) {
    if (polyline_.size() < 2) throw Error("reference route needs at least 2 vertices");
    if (!(maxDeviation > 0.0)) throw Error("max deviation must be positive");
}

void DistanceToRouteValidator::evaluate(const TraceSample& sample) {
    double best = pointSegmentDistance(sample.position, polyline_[0], polyline_[1]);
    for (std::size_t i = 2; i < polyline_.size(); ++i) {
        double d = pointSegmentDistance(sample.position, polyline_[i - 1], polyline_[i]);
        if (d < best) best = d;
    }
    if (best > worst_) worst_ = best;
    if (best > maxDeviation_) {
        fail(sample.timestampUs, "distance=" + fixed6(best) + " at " +
                                     pointText(sample.position) + " t=" +
                                     std::to_string(sample.timestampUs) +
                                     " exceeds max=" + fixed6(maxDeviation_));
    }
}

void DistanceToRouteValidator::onFinish(std::int64_t endTimeUs) {
    pass(endTimeUs, "worst distance=" + fixed6(worst_));
}

std::vector<Vec2> polylineFromWaypoints(const scn::RouteGraph& graph,
                                        const std::vector<scn::WaypointId>& route) {
    std::vector<Vec2> line;
    line.reserve(route.size());
    for (const auto& id : route) {
        line.push_back(graph.positionOf(id));
    }
    return line;
}

} // namespace simkit
