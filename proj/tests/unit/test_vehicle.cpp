#include "doctest.h"

#include <cmath>
#include <limits>

#include "simkit/error.hpp"
#include "simkit/vehicle.hpp"

using namespace simkit;

TEST_CASE("zero steering integrates to exact straight-line motion") {
    VehicleState s;
    s.position = {10.0, -5.0};
    s.heading = 0.0;
    s.speed = 8.0;

    // forward Euler with constant speed and heading is exact
    for (int i = 0; i < 1000; ++i) {
        s = stepKinematic(s, VehicleCommand{0.0, 0.0}, 0.01);
    }
    CHECK(s.position.x == doctest::Approx(10.0 + 8.0 * 10.0).epsilon(1e-12));
    CHECK(s.position.y == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(s.heading == 0.0);
    CHECK(s.speed == 8.0);
    CHECK(s.timestampUs == 1000 * 10'000);
}

TEST_CASE("constant steering approximates the analytic circle") {
    // At delta = 0.1 rad the bicycle's turn radius is L / tan(delta).
    const VehicleLimits limits;
    const double delta = 0.1;
    const double radius = limits.wheelbase / std::tan(delta);

    VehicleState s;
    s.speed = 5.0;

    // drive one full circumference at 1 ms steps
    const double circumference = 2.0 * M_PI * radius;
    const double dt = 0.001;
    const int steps = static_cast<int>(circumference / (s.speed * dt));
    for (int i = 0; i < steps; ++i) {
        s = stepKinematic(s, VehicleCommand{0.0, delta}, dt, limits);
    }

    // the integrated path must return near the origin: error < 1% of R
    double closure = std::hypot(s.position.x, s.position.y);
    CHECK(closure < 0.01 * radius);
    CHECK(radius == doctest::Approx(26.41159).epsilon(1e-5));
}

TEST_CASE("commands are clamped to the limits") {
    VehicleLimits limits;
    VehicleState s;
    s.speed = 10.0;

    SUBCASE("acceleration ceiling") {
        auto next = stepKinematic(s, VehicleCommand{100.0, 0.0}, 0.1, limits);
        CHECK(next.speed == doctest::Approx(10.0 + limits.maxAccel * 0.1));
    }
    SUBCASE("deceleration floor") {
        auto next = stepKinematic(s, VehicleCommand{-100.0, 0.0}, 0.1, limits);
        CHECK(next.speed == doctest::Approx(10.0 - limits.maxDecel * 0.1));
    }
    SUBCASE("steering clamp, both signs") {
        auto left = stepKinematic(s, VehicleCommand{0.0, 2.0}, 0.01, limits);
        CHECK(left.steeringAngle == limits.maxSteering);
        auto right = stepKinematic(s, VehicleCommand{0.0, -2.0}, 0.01, limits);
        CHECK(right.steeringAngle == -limits.maxSteering);
    }
}

TEST_CASE("speed never goes negative") {
    VehicleState s;
    s.speed = 0.1;
    auto next = stepKinematic(s, VehicleCommand{-8.0, 0.0}, 0.1);
    CHECK(next.speed == 0.0);
    // and stays there
    next = stepKinematic(next, VehicleCommand{-8.0, 0.0}, 0.1);
    CHECK(next.speed == 0.0);
}

TEST_CASE("the steering setpoint takes effect within the step") {
    VehicleState s; // standing still
    auto next = stepKinematic(s, VehicleCommand{0.0, 0.3}, 0.01);
    CHECK(next.steeringAngle == 0.3);
    CHECK(next.heading == 0.0); // no speed, no yaw
    CHECK(next.position == Vec2{0.0, 0.0});
}

TEST_CASE("heading stays wrapped to (-pi, pi]") {
    VehicleState s;
    s.heading = M_PI - 0.01;
    s.speed = 10.0;
    VehicleLimits limits;
    for (int i = 0; i < 50; ++i) {
        s = stepKinematic(s, VehicleCommand{0.0, limits.maxSteering}, 0.1, limits);
        CHECK(s.heading > -M_PI);
        CHECK(s.heading <= M_PI);
    }
}

TEST_CASE("dt outside (0, 0.1] and non-finite inputs are rejected") {
    VehicleState s;
    VehicleCommand c;
    CHECK_THROWS_AS(stepKinematic(s, c, 0.0), Error);
    CHECK_THROWS_AS(stepKinematic(s, c, -0.01), Error);
    CHECK_THROWS_AS(stepKinematic(s, c, 0.1001), Error);
    CHECK_THROWS_AS(stepKinematic(s, c, std::numeric_limits<double>::quiet_NaN()), Error);
    CHECK_NOTHROW(stepKinematic(s, c, 0.1));
    CHECK_NOTHROW(stepKinematic(s, c, 1e-6));

    VehicleState bad;
    bad.speed = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(stepKinematic(bad, c, 0.01), Error);

    VehicleCommand badCmd;
    badCmd.steeringAngle = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(stepKinematic(s, badCmd, 0.01), Error);
}

TEST_CASE("the timestamp advances by the rounded step") {
    VehicleState s;
    s.timestampUs = 500;
    auto next = stepKinematic(s, VehicleCommand{}, 0.01);
    CHECK(next.timestampUs == 500 + 10'000);
    // fractional microseconds round to nearest
    next = stepKinematic(s, VehicleCommand{}, 0.0000015);
    CHECK(next.timestampUs == 502);
}

TEST_CASE("limits load from configuration and reject nonsense") {
    auto cfg = ConfigurationSet::parse(
        "vehicle.wheelbase=3.1\n"
        "vehicle.maxsteering=0.4\n"
        "vehicle.maxaccel=2.5\n"
        "vehicle.maxdecel=6.0\n");
    auto limits = VehicleLimits::fromConfig(cfg);
    CHECK(limits.wheelbase == 3.1);
    CHECK(limits.maxSteering == 0.4);
    CHECK(limits.maxAccel == 2.5);
    CHECK(limits.maxDecel == 6.0);

    // absent keys keep the built-in defaults
    auto defaults = VehicleLimits::fromConfig(ConfigurationSet{});
    CHECK(defaults.wheelbase == 2.65);
    CHECK(defaults.maxSteering == 0.5);

    auto bad = ConfigurationSet::parse("vehicle.wheelbase=0.0\n");
    CHECK_THROWS_AS(VehicleLimits::fromConfig(bad), ConfigError);
    auto negative = ConfigurationSet::parse("vehicle.maxsteering=-0.5\n");
    CHECK_THROWS_AS(VehicleLimits::fromConfig(negative), ConfigError);
}

TEST_CASE("polyline paths answer pose queries by arc length") {
    PolylinePath path({{0, 0}, {10, 0}, {10, 10}});
    CHECK(path.length() == doctest::Approx(20.0));

    SUBCASE("interior points interpolate linearly") {
        Pose p = path.poseAt(5.0);
        CHECK(p.position.x == doctest::Approx(5.0));
        CHECK(p.position.y == doctest::Approx(0.0));
        CHECK(p.heading == doctest::Approx(0.0));

        Pose q = path.poseAt(15.0);
        CHECK(q.position.x == doctest::Approx(10.0));
        CHECK(q.position.y == doctest::Approx(5.0));
        CHECK(q.heading == doctest::Approx(M_PI / 2));
    }

    SUBCASE("a vertex belongs to the outgoing segment") {
        Pose corner = path.poseAt(10.0);
        CHECK(corner.position == Vec2{10.0, 0.0});
        CHECK(corner.heading == doctest::Approx(M_PI / 2));
    }

    SUBCASE("queries clamp to the ends") {
        CHECK(path.poseAt(-3.0).position == Vec2{0.0, 0.0});
        Pose end = path.poseAt(99.0);
        CHECK(end.position.x == doctest::Approx(10.0));
        CHECK(end.position.y == doctest::Approx(10.0));
        CHECK(end.heading == doctest::Approx(M_PI / 2)); // final segment's direction
    }

    SUBCASE("a single-point path is a fixed pose") {
        PolylinePath dot({{3, 4}});
        CHECK(dot.length() == 0.0);
        CHECK(dot.poseAt(0.0).position == Vec2{3.0, 4.0});
        CHECK(dot.poseAt(5.0).position == Vec2{3.0, 4.0});
    }

    SUBCASE("empty point lists are rejected") {
        CHECK_THROWS_AS(PolylinePath({}), Error);
    }
}
