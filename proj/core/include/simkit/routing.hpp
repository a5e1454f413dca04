#pragma once

#include <map>
#include <optional>
#include <vector>

#include "simkit/geometry.hpp"
#include "simkit/scenario.hpp"

namespace simkit::scn {

/// Directed waypoint graph with Euclidean edge weights. Built from a
/// scenario (consecutive pointModel waypoints plus connectors, lanes
/// are one-directional) or assembled by hand in tests.
class RouteGraph {
public:
    struct Edge {
        WaypointId target;
        double weight = 0.0;
    };

    static RouteGraph fromScenario(const ScenarioModel& scenario);

    /// Throws Error on a duplicate node.
    void addNode(const WaypointId& id, Vec2 position);

    /// Weight is the Euclidean distance between the endpoints; both
    /// must exist and be distinct positions (weights are > 0).
    void addEdge(const WaypointId& from, const WaypointId& to);

    std::size_t nodeCount() const { return nodes_.size(); }
    bool hasNode(const WaypointId& id) const { return nodes_.count(id) != 0; }
    Vec2 positionOf(const WaypointId& id) const;

    /// Outgoing edges sorted by target id.
    const std::vector<Edge>& edgesFrom(const WaypointId& id) const;

    const std::map<WaypointId, Vec2>& nodes() const { return nodes_; }

private:
    std::map<WaypointId, Vec2> nodes_;
    std::map<WaypointId, std::vector<Edge>> edges_;
};

struct Route {
    std::vector<WaypointId> waypoints;
    double cost = 0.0;
};

/// Minimal-cost path from `from` to `to`; among equal-cost paths the
/// one whose waypoint-id sequence is smallest (ids ordered as
/// layer.road.lane.point tuples). Returns nullopt when `to` is
/// unreachable: NoRoute is an outcome, not an error. Unknown endpoints
/// throw Error naming the waypoint.
std::optional<Route> shortestRoute(const RouteGraph& graph, const WaypointId& from,
                                   const WaypointId& to);

} // namespace simkit::scn
