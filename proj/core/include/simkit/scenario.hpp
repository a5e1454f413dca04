#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "simkit/geometry.hpp"

namespace simkit::scn {

/// Globally addressable waypoint name "layer.road.lane.point".
struct WaypointId {
    int layer = 0;
    int road = 0;
    int lane = 0;
    int point = 0;

    std::string str() const;
    static std::optional<WaypointId> parse(std::string_view text);

    friend auto operator<=>(const WaypointId&, const WaypointId&) = default;
};

// Stationary world: ground obstacles, the lane network, parking zones.

struct Polygon {
    int id = 0;
    double height = 0.0;
    std::vector<Vec2> vertices;  // closed ring, last edge implied

    friend bool operator==(const Polygon&, const Polygon&) = default;
};

struct Cylinder {
    int id = 0;
    Vec2 center;
    double radius = 0.0;
    double height = 0.0;

    friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

struct Waypoint {
    int id = 0;
    Vec2 position;

    friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

enum class Marking { Solid, Broken, None };

struct Connector {
    WaypointId source;
    WaypointId target;

    friend bool operator==(const Connector&, const Connector&) = default;
};

struct Lane {
    int id = 0;
    double width = 0.0;
    Marking leftMarking = Marking::None;
    Marking rightMarking = Marking::None;
    std::optional<double> speedLimit;  // m/s
    std::vector<Waypoint> pointModel;  // travel follows this order
    std::vector<Connector> connectors;
    std::vector<WaypointId> stopSigns;

    friend bool operator==(const Lane&, const Lane&) = default;
};

struct Road {
    int id = 0;
    std::string name;
    std::vector<Lane> lanes;

    friend bool operator==(const Road&, const Road&) = default;
};

struct Layer {
    int id = 0;
    double height = 0.0;
    std::vector<Road> roads;

    friend bool operator==(const Layer&, const Layer&) = default;
};

struct Spot {
    int id = 0;
    Vec2 first;
    Vec2 second;

    friend bool operator==(const Spot&, const Spot&) = default;
};

struct Zone {
    int id = 0;
    std::string name;
    std::vector<WaypointId> perimeter;
    std::vector<Spot> spots;

    friend bool operator==(const Zone&, const Zone&) = default;
};

struct ScenarioHeader {
    std::string name;
    std::string version;
    std::string date;
    // WGS84 anchor of the local Cartesian frame; carried, never computed on.
    std::optional<Vec2> origin;

    friend bool operator==(const ScenarioHeader&, const ScenarioHeader&) = default;
};

struct ScenarioModel {
    ScenarioHeader header;
    std::vector<Polygon> polygons;
    std::vector<Cylinder> cylinders;
    std::vector<Layer> layers;
    std::vector<Zone> zones;

    const Waypoint* findWaypoint(const WaypointId& id) const;

    friend bool operator==(const ScenarioModel&, const ScenarioModel&) = default;
};

// Dynamic world: objects with shapes, behaviors and trigger conditions.

struct Rectangle {
    double length = 0.0;
    double width = 0.0;

    friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

struct PointDriver {
    double speed = 0.0;  // m/s
    std::vector<WaypointId> route;

    friend bool operator==(const PointDriver&, const PointDriver&) = default;
};

/// Driven from outside the situation (the system under test).
struct ExternalDriver {
    friend bool operator==(const ExternalDriver&, const ExternalDriver&) = default;
};

using Behavior = std::variant<PointDriver, ExternalDriver>;

enum class StartKind { Immediately, OnMoving, OnEnteringPolygon };

struct StartCondition {
    StartKind kind = StartKind::Immediately;
    int objectId = 0;   // OnMoving, OnEnteringPolygon
    int polygonId = 0;  // OnEnteringPolygon

    friend bool operator==(const StartCondition&, const StartCondition&) = default;
};

enum class StopKind { EndOfRoute, OnReachingPoint };

struct StopCondition {
    StopKind kind = StopKind::EndOfRoute;
    WaypointId point;  // OnReachingPoint

    friend bool operator==(const StopCondition&, const StopCondition&) = default;
};

struct SituationObject {
    int id = 0;
    std::string name;
    Rectangle shape;
    Behavior behavior = ExternalDriver{};
    StartCondition start;
    StopCondition stop;

    friend bool operator==(const SituationObject&, const SituationObject&) = default;
};

struct SituationHeader {
    std::string name;
    std::string version;
    std::string scenarioRef;  // must equal the scenario header's name

    friend bool operator==(const SituationHeader&, const SituationHeader&) = default;
};

struct SituationModel {
    SituationHeader header;
    std::vector<SituationObject> objects;

    const SituationObject* findObject(int id) const;

    friend bool operator==(const SituationModel&, const SituationModel&) = default;
};

// Parsing. The grammar lives in docs/scenario-grammar.ebnf and that
// file is normative; parse() accepts exactly that language.

struct ParseError {
    int line = 0;
    int column = 0;
    std::string message;
};

struct ScenarioParse {
    std::optional<ScenarioModel> model;  // set iff errors is empty
    std::vector<ParseError> errors;
};

struct SituationParse {
    std::optional<SituationModel> model;
    std::vector<ParseError> errors;
};

ScenarioParse parseScenario(std::string_view text);
SituationParse parseSituation(std::string_view text);

/// Canonical text form; parsing it again yields a structurally equal
/// model.
std::string print(const ScenarioModel& model);
std::string print(const SituationModel& model);

// Semantic validation. Syntax-clean models can still break referential
// rules; these return every violation, never throw.

struct SemanticError {
    std::string rule;     // stable rule tag, e.g. "dangling-connector"
    std::string subject;  // the offending id
    std::string detail;
};

std::vector<SemanticError> validate(const ScenarioModel& scenario);
/// Self-contained situation rules only (no scenario at hand).
std::vector<SemanticError> validate(const SituationModel& situation);
std::vector<SemanticError> validate(const SituationModel& situation,
                                    const ScenarioModel& scenario);

} // namespace simkit::scn
