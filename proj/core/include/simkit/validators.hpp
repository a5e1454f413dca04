#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simkit/container.hpp"
#include "simkit/geometry.hpp"
#include "simkit/routing.hpp"

namespace simkit {

/// One pose observation of one vehicle, extracted from a VehicleState
/// container live on the bus or offline from a recording.
struct TraceSample {
    std::int32_t vehicleId = 0;
    Vec2 position;
    double heading = 0.0;
    std::int64_t timestampUs = 0;
};

/// Extracts a TraceSample if `c` is a VehicleState container.
std::optional<TraceSample> traceSampleFrom(const Container& c);

struct Verdict {
    std::string validatorName;
    std::int32_t vehicleId = 0;
    bool passed = false;
    std::optional<std::int64_t> finalizedAtUs;  // nullopt while pending
    std::string detail;

    bool finalized() const { return finalizedAtUs.has_value(); }
};

/// Incremental pass/fail evaluator over one vehicle's trace. The same
/// object works live (fed per slice) and offline (fed from a
/// recording); verdicts are immutable once finalized and any verdict
/// still pending at run end finalizes as FAILED.
class Validator {
public:
    virtual ~Validator() = default;

    virtual std::string name() const = 0;
    std::int32_t vehicleId() const { return vehicleId_; }

    void onSample(const TraceSample& sample);

    /// Run end: pessimistically finalizes anything still pending.
    void finish(std::int64_t endTimeUs);

    bool finalized() const { return verdict_.finalized(); }
    const Verdict& verdict() const { return verdict_; }

protected:
    explicit Validator(std::int32_t vehicleId) : vehicleId_(vehicleId) {}

    virtual void evaluate(const TraceSample& sample) = 0;
    virtual void onFinish(std::int64_t endTimeUs) = 0;

    void pass(std::int64_t atUs, std::string detail);
    void fail(std::int64_t atUs, std::string detail);

private:
    std::int32_t vehicleId_;
    Verdict verdict_;
};

/// PASSED at the first sample within `radius` of `destination`; FAILED
/// if the run ends without one.
class DestinationReachedValidator : public Validator {
public:
    DestinationReachedValidator(std::int32_t vehicleId, Vec2 destination, double radius);

    std::string name() const override { return "DestinationReached"; }

protected:
    void evaluate(const TraceSample& sample) override;
    void onFinish(std::int64_t endTimeUs) override;

private:
    Vec2 destination_;
    double radius_;
};

/// Checks that the vehicle passes the shortest route's waypoints in
/// order, each by entering a passRadius disc. Revisiting earlier
/// waypoints is allowed; skipping ahead is not.
class ShortestRouteChosenValidator : public Validator {
public:
    /// Runs Dijkstra at construction; throws Error when no route
    /// exists (misconfigured suite, not a verdict).
    ShortestRouteChosenValidator(std::int32_t vehicleId, const scn::RouteGraph& graph,
                                 const scn::WaypointId& from, const scn::WaypointId& to,
                                 double passRadius = 2.0);

    std::string name() const override { return "ShortestRouteChosen"; }

    const std::vector<scn::WaypointId>& route() const { return route_; }

protected:
    void evaluate(const TraceSample& sample) override;
    void onFinish(std::int64_t endTimeUs) override;

private:
    std::vector<scn::WaypointId> route_;
    std::vector<Vec2> positions_;
    double passRadius_;
    std::size_t nextIndex_ = 0;
};

/// FAILED at the first sample farther than maxDeviation from the
/// reference polyline; PASSED at run end with the worst distance seen.
class DistanceToRouteValidator : public Validator {
public:
    DistanceToRouteValidator(std::int32_t vehicleId, std::vector<Vec2> polyline,
                             double maxDeviation);

    std::string name() const override { return "DistanceToRoute"; }

    double worstDistance() const { return worst_; }

protected:
    void evaluate(const TraceSample& sample) override;
    void onFinish(std::int64_t endTimeUs) override;

private:
    std::vector<Vec2> polyline_;
    double maxDeviation_;
    double worst_ = 0.0;
};

/// World positions of a waypoint route, for building reference
/// polylines.
std::vector<Vec2> polylineFromWaypoints(const scn::RouteGraph& graph,
                                        const std::vector<scn::WaypointId>& route);

} // namespace simkit
