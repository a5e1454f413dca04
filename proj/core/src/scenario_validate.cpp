#include <set>
#include <string>

#include "simkit/scenario.hpp"

namespace simkit::scn {

namespace {

class Collector {
public:
    void add(std::string rule, std::string subject, std::string detail) {
        errors_.push_back(SemanticError{std::move(rule), std::move(subject),
                                        std::move(detail)});
    }

    std::vector<SemanticError> take() { return std::move(errors_); }

private:
    std::vector<SemanticError> errors_;
};

/// Reports rule "duplicate-id" when `id` was already seen in `scope`.
class UniqueIds {
public:
    UniqueIds(Collector& errors, std::string scope)
        : errors_(errors), scope_(std::move(scope)) {}

    void check(const std::string& id) {
        if (!seen_.insert(id).second) {
            errors_.add("duplicate-id", id, "id " + id + " appears twice in " + scope_);
        }
    }

private:
    Collector& errors_;
    std::string scope_;
    std::set<std::string> seen_;
};

void checkWaypointRef(const ScenarioModel& scenario, const WaypointId& id,
                      const std::string& rule, const std::string& where,
                      Collector& errors) {
    if (!scenario.findWaypoint(id)) {
        errors.add(rule, id.str(), where + " references unknown waypoint " + id.str());
    }
}

} // namespace

std::vector<SemanticError> validate(const ScenarioModel& scenario) {
    Collector errors;

    UniqueIds groundIds(errors, "GROUND");
    for (const auto& p : scenario.polygons) groundIds.check(std::to_string(p.id));
    for (const auto& c : scenario.cylinders) groundIds.check(std::to_string(c.id));

    UniqueIds layerIds(errors, "the scenario's layers");
    for (const auto& layer : scenario.layers) {
        layerIds.check(std::to_string(layer.id));
        UniqueIds roadIds(errors, "LAYER " + std::to_string(layer.id));
        for (const auto& road : layer.roads) {
            std::string roadPath = std::to_string(layer.id) + "." + std::to_string(road.id);
            roadIds.check(std::to_string(road.id));
            UniqueIds laneIds(errors, "ROAD " + roadPath);
            for (const auto& lane : road.lanes) {
                std::string lanePath = roadPath + "." + std::to_string(lane.id);
                laneIds.check(std::to_string(lane.id));

                if (lane.width <= 0.0) {
                    errors.add("bad-width", lanePath,
                               "lane " + lanePath + " needs a positive width");
                }
                if (lane.pointModel.size() < 2) {
                    errors.add("lane-too-short", lanePath,
                               "lane " + lanePath + " needs at least 2 waypoints");
                }

                UniqueIds waypointIds(errors, "LANE " + lanePath);
                for (const auto& wp : lane.pointModel) {
                    waypointIds.check(lanePath + "." + std::to_string(wp.id));
                }
                for (const auto& c : lane.connectors) {
                    checkWaypointRef(scenario, c.source, "dangling-connector",
                                     "connector in lane " + lanePath, errors);
                    checkWaypointRef(scenario, c.target, "dangling-connector",
                                     "connector in lane " + lanePath, errors);
                }
                for (const auto& s : lane.stopSigns) {
                    checkWaypointRef(scenario, s, "dangling-stopsign",
                                     "stop sign in lane " + lanePath, errors);
                }
            }
        }
    }

    UniqueIds zoneIds(errors, "the scenario's zones");
    for (const auto& zone : scenario.zones) {
        zoneIds.check(std::to_string(zone.id));
        for (const auto& id : zone.perimeter) {
            checkWaypointRef(scenario, id, "dangling-perimeter",
                             "zone " + std::to_string(zone.id), errors);
        }
        UniqueIds spotIds(errors, "ZONE " + std::to_string(zone.id));
        for (const auto& spot : zone.spots) {
            spotIds.check(std::to_string(spot.id));
        }
    }

    return errors.take();
}

namespace {

/// Shared core of the two situation overloads; cross-model rules only
/// run when a scenario is present.
std::vector<SemanticError> validateSituation(const SituationModel& situation,
                                             const ScenarioModel* scenario) {
    Collector errors;

    if (scenario && situation.header.scenarioRef != scenario->header.name) {
        errors.add("scenario-mismatch", situation.header.scenarioRef,
                   "situation references scenario '" + situation.header.scenarioRef +
                       "' but '" + scenario->header.name + "' is loaded");
    }

    UniqueIds objectIds(errors, "the situation's objects");
    for (const auto& o : situation.objects) {
        std::string oid = std::to_string(o.id);
        objectIds.check(oid);

        if (const auto* driver = std::get_if<PointDriver>(&o.behavior)) {
            if (driver->route.empty()) {
                errors.add("empty-route", oid,
                           "object " + oid + " has a point driver without a route");
            }
            if (scenario) {
                for (const auto& wp : driver->route) {
                    checkWaypointRef(*scenario, wp, "dangling-route",
                                     "route of object " + oid, errors);
                }
            }
        }

        if (o.start.kind == StartKind::OnMoving ||
            o.start.kind == StartKind::OnEnteringPolygon) {
            if (!situation.findObject(o.start.objectId)) {
                errors.add("dangling-object", std::to_string(o.start.objectId),
                           "start condition of object " + oid +
                               " watches unknown object " +
                               std::to_string(o.start.objectId));
            }
        }
        if (scenario && o.start.kind == StartKind::OnEnteringPolygon) {
            bool found = false;
            for (const auto& p : scenario->polygons) {
                if (p.id == o.start.polygonId) found = true;
            }
            if (!found) {
                errors.add("dangling-polygon", std::to_string(o.start.polygonId),
                           "start condition of object " + oid +
                               " references unknown polygon " +
                               std::to_string(o.start.polygonId));
            }
        }
        if (scenario && o.stop.kind == StopKind::OnReachingPoint) {
            checkWaypointRef(*scenario, o.stop.point, "dangling-stoppoint",
                             "stop condition of object " + oid, errors);
        }
    }

    return errors.take();
}

} // namespace

std::vector<SemanticError> validate(const SituationModel& situation) {
    return validateSituation(situation, nullptr);
}

std::vector<SemanticError> validate(const SituationModel& situation,
                                    const ScenarioModel& scenario) {
    return validateSituation(situation, &scenario);
}

} // namespace simkit::scn
