#include "simkit/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "simkit/error.hpp"

namespace simkit::scn {

RouteGraph RouteGraph::fromScenario(const ScenarioModel& scenario) {
    RouteGraph g;
    for (const auto& layer : scenario.layers) {
        for (const auto& road : layer.roads) {
            for (const auto& lane : road.lanes) {
                for (const auto& wp : lane.pointModel) {
                    g.addNode(WaypointId{layer.id, road.id, lane.id, wp.id},
                              wp.position);
                }
            }
        }
    }
    for (const auto& layer : scenario.layers) {
        for (const auto& road : layer.roads) {
            for (const auto& lane : road.lanes) {
                for (std::size_t i = 1; i < lane.pointModel.size(); ++i) {
                    g.addEdge(WaypointId{layer.id, road.id, lane.id,
                                         lane.pointModel[i - 1].id},
                              WaypointId{layer.id, road.id, lane.id,
                                         lane.pointModel[i].id});
                }
                for (const auto& c : lane.connectors) {
                    g.addEdge(c.source, c.target);
                }
            }
        }
    }
    return g;
}

void RouteGraph::addNode(const WaypointId& id, Vec2 position) {
    if (!nodes_.emplace(id, position).second) {
        throw Error("route graph already contains waypoint " + id.str());
    }
    edges_[id];
}

void RouteGraph::addEdge(const WaypointId& from, const WaypointId& to) {
    auto a = nodes_.find(from);
    auto b = nodes_.find(to);
    if (a == nodes_.end()) throw Error("unknown waypoint " + from.str());
    if (b == nodes_.end()) throw Error("unknown waypoint " + to.str());
    double w = distance(a->second, b->second);
    if (w <= 0.0) {
        throw Error("edge " + from.str() + " -> " + to.str() +
                    " has zero length; coincident waypoints are not routable");
    }
    auto& out = edges_[from];
    out.push_back(Edge{to, w});
    std::sort(out.begin(), out.end(),
              [](const Edge& x, const Edge& y) { return x.target < y.target; });
}

Vec2 RouteGraph::positionOf(const WaypointId& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw Error("unknown waypoint " + id.str());
    return it->second;
}

const std::vector<RouteGraph::Edge>& RouteGraph::edgesFrom(const WaypointId& id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw Error("unknown waypoint " + id.str());
    return it->second;
}

std::optional<Route> shortestRoute(const RouteGraph& graph, const WaypointId& from,
                                   const WaypointId& to) {
    if (!graph.hasNode(from)) throw Error("unknown waypoint " + from.str());
    if (!graph.hasNode(to)) throw Error("unknown waypoint " + to.str());

    if (from == to) {
        return Route{{from}, 0.0};
    }

    // Dijkstra on the reversed graph gives every node's remaining
    // distance to the target.
    std::map<WaypointId, std::vector<RouteGraph::Edge>> reversed;
    for (const auto& [node, pos] : graph.nodes()) {
        for (const auto& e : graph.edgesFrom(node)) {
            reversed[e.target].push_back(RouteGraph::Edge{node, e.weight});
        }
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::map<WaypointId, double> dist;
    for (const auto& [node, pos] : graph.nodes()) dist[node] = kInf;
    dist[to] = 0.0;

    using QueueItem = std::pair<double, WaypointId>;
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue;
    queue.push({0.0, to});
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        auto it = reversed.find(u);
        if (it == reversed.end()) continue;
        for (const auto& e : it->second) {
            double candidate = d + e.weight;
            if (candidate < dist[e.target]) {
                dist[e.target] = candidate;
                queue.push({candidate, e.target});
            }
        }
    }

    if (dist[from] == kInf) {
        return std::nullopt;  // NoRoute
    }

    // Walk forward, always taking the smallest-id successor that still
    // lies on a minimal-cost path; that makes the returned sequence
    // the lexicographically smallest among all minimal-cost paths.
    // Every edge weight is positive, so the remaining distance drops
    // strictly and the walk terminates.
    Route route;
    route.cost = dist[from];
    route.waypoints.push_back(from);
    WaypointId u = from;
    while (!(u == to)) {
        const WaypointId* next = nullptr;
        double bestSlack = kInf;
        const WaypointId* fallback = nullptr;
        for (const auto& e : graph.edgesFrom(u)) {
            if (dist[e.target] == kInf) continue;
            // Matches the relaxation arithmetic above exactly, so at
            // least one successor always qualifies.
            if (dist[u] == e.weight + dist[e.target]) {
                next = &e.target;
                break;  // edges are id-sorted; first hit is smallest
            }
            double slack = (e.weight + dist[e.target]) - dist[u];
            if (slack < bestSlack) {
                bestSlack = slack;
                fallback = &e.target;
            }
        }
        if (!next) next = fallback;
        if (!next) return std::nullopt;  // defensive; unreachable
        route.waypoints.push_back(*next);
        u = *next;
    }
    return route;
}

} // namespace simkit::scn
