#include "doctest.h"

#include <algorithm>
#include <string>

#include "simkit/scenario.hpp"

using namespace simkit::scn;

namespace {

// Minimal but complete scenario exercising every construct once.
const char* kScenarioText = R"(
// two crossing streets with one obstacle of each kind
SCENARIO {
    name = "mini";
    version = "1.0";
    date = "2026-08-14";
    origin = (52.247041, 10.575830);

    GROUND {
        POLYGON 1 {
            height = 4.5;
            vertex = (10.0, 10.0);
            vertex = (20.0, 10.0);
            vertex = (20.0, 20.0);
            vertex = (10.0, 20.0);
        }
        CYLINDER 2 {
            center = (-5.0, 8.0);
            radius = 1.5;
            height = 6.0;
        }
    }

    LAYER 1 {
        height = 0.0;
        ROAD 1 {
            name = "main street";
            LANE 1 {
                width = 3.5;
                leftmarking = solid;
                rightmarking = broken;
                speedlimit = 13.9;
                WAYPOINT 1 { position = (0.0, 0.0); }
                WAYPOINT 2 { position = (50.0, 0.0); }
                WAYPOINT 3 { position = (100.0, 0.0); }
                CONNECTOR 1.1.1.3 -> 1.2.1.1;
                STOPSIGN 1.1.1.3;
            }
        }
        ROAD 2 {
            name = "side street";
            LANE 1 {
                width = 3.0;
                leftmarking = none;
                rightmarking = none;
                WAYPOINT 1 { position = (105.0, 5.0); }
                WAYPOINT 2 { position = (105.0, 60.0); }
            }
        }
    }

    ZONE 1 {
        name = "depot";
        perimeter = 1.1.1.1, 1.1.1.2;
        SPOT 1 {
            first = (1.0, 2.0);
            second = (3.0, 4.0);
        }
    }
}
)";

const char* kSituationText = R"(
SITUATION {
    name = "rush hour";
    version = "1.0";
    scenario = "mini";

    OBJECT 1 {
        name = "ego";
        RECTANGLE {
            length = 4.2;
            width = 1.8;
        }
        BEHAVIOR EXTERNAL;
        START IMMEDIATELY;
        STOP ENDOFROUTE;
    }

    OBJECT 2 {
        name = "truck";
        RECTANGLE {
            length = 7.5;
            width = 2.4;
        }
        BEHAVIOR POINTDRIVER {
            speed = 4.0;
            route = 1.1.1.1, 1.1.1.2, 1.1.1.3;
        }
        START ONMOVING 1;
        STOP ONREACHINGPOINT 1.1.1.3;
    }

    OBJECT 3 {
        name = "pedestrian";
        RECTANGLE {
            length = 0.5;
            width = 0.5;
        }
        BEHAVIOR POINTDRIVER {
            speed = 1.2;
            route = 1.2.1.1, 1.2.1.2;
        }
        START ONENTERINGPOLYGON 2 1;
        STOP ENDOFROUTE;
    }
}
)";

ScenarioModel parsedScenario() {
    auto result = parseScenario(kScenarioText);
    REQUIRE(result.errors.empty());
    REQUIRE(result.model);
    return *result.model;
}

SituationModel parsedSituation() {
    auto result = parseSituation(kSituationText);
    REQUIRE(result.errors.empty());
    REQUIRE(result.model);
    return *result.model;
}

bool hasRule(const std::vector<SemanticError>& errors, const std::string& rule,
             const std::string& subject) {
    return std::any_of(errors.begin(), errors.end(), [&](const SemanticError& e) {
        return e.rule == rule && e.subject == subject;
    });
}

} // namespace

TEST_CASE("waypoint ids parse and print") {
    auto id = WaypointId::parse("1.2.3.45");
    REQUIRE(id);
    CHECK(id->layer == 1);
    CHECK(id->road == 2);
    CHECK(id->lane == 3);
    CHECK(id->point == 45);
    CHECK(id->str() == "1.2.3.45");

    CHECK_FALSE(WaypointId::parse("1.2.3"));
    CHECK_FALSE(WaypointId::parse("1.2.3.4.5"));
    CHECK_FALSE(WaypointId::parse("1.2.3.x"));
    CHECK_FALSE(WaypointId::parse("-1.2.3.4"));
    CHECK_FALSE(WaypointId::parse(""));
}

TEST_CASE("a full scenario parses into the expected model") {
    ScenarioModel m = parsedScenario();

    CHECK(m.header.name == "mini");
    CHECK(m.header.version == "1.0");
    CHECK(m.header.date == "2026-08-14");
    REQUIRE(m.header.origin);
    CHECK(m.header.origin->x == doctest::Approx(52.247041));

    REQUIRE(m.polygons.size() == 1);
    CHECK(m.polygons[0].id == 1);
    CHECK(m.polygons[0].height == 4.5);
    CHECK(m.polygons[0].vertices.size() == 4);

    REQUIRE(m.cylinders.size() == 1);
    CHECK(m.cylinders[0].center.x == -5.0);
    CHECK(m.cylinders[0].radius == 1.5);

    REQUIRE(m.layers.size() == 1);
    REQUIRE(m.layers[0].roads.size() == 2);
    const Lane& lane = m.layers[0].roads[0].lanes.at(0);
    CHECK(lane.width == 3.5);
    CHECK(lane.leftMarking == Marking::Solid);
    CHECK(lane.rightMarking == Marking::Broken);
    CHECK(lane.speedLimit == 13.9);
    CHECK(lane.pointModel.size() == 3);
    REQUIRE(lane.connectors.size() == 1);
    CHECK(lane.connectors[0].source == WaypointId{1, 1, 1, 3});
    CHECK(lane.connectors[0].target == WaypointId{1, 2, 1, 1});
    REQUIRE(lane.stopSigns.size() == 1);
    CHECK(lane.stopSigns[0] == WaypointId{1, 1, 1, 3});

    const Lane& side = m.layers[0].roads[1].lanes.at(0);
    CHECK_FALSE(side.speedLimit.has_value());
    CHECK(side.leftMarking == Marking::None);

    REQUIRE(m.zones.size() == 1);
    CHECK(m.zones[0].name == "depot");
    CHECK(m.zones[0].perimeter.size() == 2);
    REQUIRE(m.zones[0].spots.size() == 1);
    CHECK(m.zones[0].spots[0].second.y == 4.0);

    const Waypoint* wp = m.findWaypoint(WaypointId{1, 1, 1, 2});
    REQUIRE(wp);
    CHECK(wp->position.x == 50.0);
    CHECK_FALSE(m.findWaypoint(WaypointId{9, 9, 9, 9}));
}

TEST_CASE("a full situation parses into the expected model") {
    SituationModel s = parsedSituation();

    CHECK(s.header.name == "rush hour");
    CHECK(s.header.scenarioRef == "mini");
    REQUIRE(s.objects.size() == 3);

    const SituationObject* ego = s.findObject(1);
    REQUIRE(ego);
    CHECK(ego->name == "ego");
    CHECK(ego->shape.length == 4.2);
    CHECK(std::holds_alternative<ExternalDriver>(ego->behavior));
    CHECK(ego->start.kind == StartKind::Immediately);
    CHECK(ego->stop.kind == StopKind::EndOfRoute);

    const SituationObject* truck = s.findObject(2);
    REQUIRE(truck);
    const auto* driver = std::get_if<PointDriver>(&truck->behavior);
    REQUIRE(driver);
    CHECK(driver->speed == 4.0);
    CHECK(driver->route.size() == 3);
    CHECK(truck->start.kind == StartKind::OnMoving);
    CHECK(truck->start.objectId == 1);
    CHECK(truck->stop.kind == StopKind::OnReachingPoint);
    CHECK(truck->stop.point == WaypointId{1, 1, 1, 3});

    const SituationObject* walker = s.findObject(3);
    REQUIRE(walker);
    CHECK(walker->start.kind == StartKind::OnEnteringPolygon);
    CHECK(walker->start.objectId == 2);
    CHECK(walker->start.polygonId == 1);
    CHECK_FALSE(s.findObject(4));
}

TEST_CASE("printing and reparsing reproduces the model") {
    ScenarioModel scenario = parsedScenario();
    auto scenarioAgain = parseScenario(print(scenario));
    REQUIRE(scenarioAgain.errors.empty());
    CHECK(*scenarioAgain.model == scenario);

    SituationModel situation = parsedSituation();
    auto situationAgain = parseSituation(print(situation));
    REQUIRE(situationAgain.errors.empty());
    CHECK(*situationAgain.model == situation);
}

TEST_CASE("number tokens are classified by their dot count") {
    // 1.25 in an int slot is a lexical-level mismatch the parser reports
    auto twoDots = parseScenario(
        "SCENARIO { name = \"x\"; version = \"1\"; date = \"d\";\n"
        "LAYER 1 { height = 1.2.3; } }");
    CHECK_FALSE(twoDots.errors.empty());

    // four-part dotted numbers are waypoint ids, not floats
    auto situation = parseSituation(
        "SITUATION { name = \"s\"; version = \"1\"; scenario = \"x\";\n"
        "OBJECT 1 { name = \"o\"; RECTANGLE { length = 1.0; width = 1.0; }\n"
        "BEHAVIOR POINTDRIVER { speed = 1.0; route = 0.0.0.1; }\n"
        "START IMMEDIATELY; STOP ENDOFROUTE; } }");
    REQUIRE(situation.errors.empty());
    const auto* d = std::get_if<PointDriver>(&situation.model->objects[0].behavior);
    REQUIRE(d);
    CHECK(d->route == std::vector<WaypointId>{WaypointId{0, 0, 0, 1}});

    // a negative sign is only valid on ints and floats
    auto negativeId = parseSituation(
        "SITUATION { name = \"s\"; version = \"1\"; scenario = \"x\";\n"
        "OBJECT 1 { name = \"o\"; RECTANGLE { length = 1.0; width = 1.0; }\n"
        "BEHAVIOR POINTDRIVER { speed = 1.0; route = -1.0.0.1; }\n"
        "START IMMEDIATELY; STOP ENDOFROUTE; } }");
    CHECK_FALSE(negativeId.errors.empty());
}

TEST_CASE("comments run to end of line") {
    auto result = parseScenario(
        "// header comment\n"
        "SCENARIO { // trailing\n"
        "name = \"c\"; version = \"1\"; date = \"d\";\n"
        "// LAYER 1 { this never parses }\n"
        "}\n");
    REQUIRE(result.errors.empty());
    CHECK(result.model->layers.empty());
}

TEST_CASE("parse errors carry line and column and do not stop the parse") {
    auto result = parseScenario(
        "SCENARIO {\n"
        "    name = \"broken\";\n"
        "    version = ;\n"
        "    date = \"d\";\n"
        "    LAYER 1 { height = \"not a number\"; }\n"
        "}\n");
    REQUIRE(result.errors.size() >= 2);
    CHECK_FALSE(result.model);

    // the first error points at the ';' after the missing value
    CHECK(result.errors[0].line == 3);
    CHECK(result.errors[0].column == 15);
    // the parser resynced and still saw the later mistake
    bool sawLayerError = std::any_of(
        result.errors.begin(), result.errors.end(),
        [](const ParseError& e) { return e.line == 5; });
    CHECK(sawLayerError);
}

TEST_CASE("duplicate attributes are rejected") {
    auto result = parseScenario(
        "SCENARIO { name = \"x\"; name = \"y\"; version = \"1\"; date = \"d\"; }");
    REQUIRE_FALSE(result.errors.empty());
    CHECK(result.errors[0].message.find("duplicate attribute") != std::string::npos);
    CHECK(result.errors[0].message.find("name") != std::string::npos);
}

TEST_CASE("error reporting stops at the cap") {
    std::string text = "SCENARIO { name = \"x\"; version = \"1\"; date = \"d\";\n";
    for (int i = 0; i < 60; ++i) text += "LAYER ? { }\n";
    text += "}";
    auto result = parseScenario(text);
    CHECK(result.errors.size() == 25);
}

TEST_CASE("unterminated strings are lexical errors") {
    auto result = parseScenario("SCENARIO { name = \"oops;\n}");
    CHECK_FALSE(result.errors.empty());
}

TEST_CASE("scenario semantic validation flags each rule") {
    ScenarioModel m = parsedScenario();
    CHECK(validate(m).empty());

    SUBCASE("duplicate ids") {
        m.polygons.push_back(m.polygons[0]);
        CHECK(hasRule(validate(m), "duplicate-id", "1"));

        // polygons and cylinders share the GROUND id space
        ScenarioModel ground = parsedScenario();
        ground.cylinders[0].id = ground.polygons[0].id;
        CHECK(hasRule(validate(ground), "duplicate-id", "1"));

        ScenarioModel lanes = parsedScenario();
        lanes.layers[0].roads[0].lanes.push_back(lanes.layers[0].roads[0].lanes[0]);
        CHECK(hasRule(validate(lanes), "duplicate-id", "1"));

        ScenarioModel points = parsedScenario();
        points.layers[0].roads[0].lanes[0].pointModel[1].id = 1;
        CHECK(hasRule(validate(points), "duplicate-id", "1.1.1.1"));
    }

    SUBCASE("dangling connector endpoints") {
        m.layers[0].roads[0].lanes[0].connectors.push_back(
            Connector{WaypointId{1, 1, 1, 1}, WaypointId{7, 7, 7, 7}});
        CHECK(hasRule(validate(m), "dangling-connector", "7.7.7.7"));
    }

    SUBCASE("stop signs must name a real waypoint") {
        m.layers[0].roads[0].lanes[0].stopSigns.push_back(WaypointId{1, 2, 1, 9});
        CHECK(hasRule(validate(m), "dangling-stopsign", "1.2.1.9"));
    }

    SUBCASE("zone perimeters must reference real waypoints") {
        m.zones[0].perimeter.push_back(WaypointId{9, 9, 9, 9});
        CHECK(hasRule(validate(m), "dangling-perimeter", "9.9.9.9"));
    }

    SUBCASE("lanes need at least two waypoints and positive width") {
        m.layers[0].roads[1].lanes[0].pointModel.resize(1);
        CHECK(hasRule(validate(m), "lane-too-short", "1.2.1"));

        ScenarioModel thin = parsedScenario();
        thin.layers[0].roads[0].lanes[0].width = 0.0;
        CHECK(hasRule(validate(thin), "bad-width", "1.1.1"));
    }
}

TEST_CASE("situation validation catches self-contained rules alone") {
    SituationModel s = parsedSituation();
    CHECK(validate(s).empty());

    SUBCASE("duplicate object ids") {
        s.objects.push_back(s.objects[0]);
        CHECK(hasRule(validate(s), "duplicate-id", "1"));
    }

    SUBCASE("point drivers need a route") {
        std::get<PointDriver>(s.objects[1].behavior).route.clear();
        CHECK(hasRule(validate(s), "empty-route", "2"));
    }

    SUBCASE("trigger references must name declared objects") {
        s.objects[1].start.objectId = 42;
        CHECK(hasRule(validate(s), "dangling-object", "42"));
    }
}

TEST_CASE("situation validation against a scenario adds cross-checks") {
    ScenarioModel scenario = parsedScenario();
    SituationModel s = parsedSituation();
    CHECK(validate(s, scenario).empty());

    SUBCASE("scenario reference must match the scenario name") {
        s.header.scenarioRef = "otherworld";
        CHECK(hasRule(validate(s, scenario), "scenario-mismatch", "otherworld"));
    }

    SUBCASE("route waypoints must exist") {
        std::get<PointDriver>(s.objects[1].behavior).route.push_back(WaypointId{8, 8, 8, 8});
        CHECK(hasRule(validate(s, scenario), "dangling-route", "8.8.8.8"));
    }

    SUBCASE("stop points must exist") {
        s.objects[1].stop.point = WaypointId{8, 8, 8, 8};
        CHECK(hasRule(validate(s, scenario), "dangling-stoppoint", "8.8.8.8"));
    }

    SUBCASE("start polygons must exist") {
        s.objects[2].start.polygonId = 99;
        CHECK(hasRule(validate(s, scenario), "dangling-polygon", "99"));
    }

    SUBCASE("self-contained rules still run with a scenario present") {
        std::get<PointDriver>(s.objects[1].behavior).route.clear();
        CHECK(hasRule(validate(s, scenario), "empty-route", "2"));
    }
}
