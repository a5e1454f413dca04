#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simkit/config.hpp"
#include "simkit/routing.hpp"
#include "simkit/scenario.hpp"
#include "simkit/sim/runner.hpp"
#include "simkit/validators.hpp"

namespace simkit::sim {

/// Shared immutable world state for one simulation run. Parts keep a
/// shared_ptr so the models outlive the runner regardless of teardown
/// order.
struct WorldContext {
    scn::ScenarioModel scenario;
    scn::SituationModel situation;
    scn::RouteGraph graph;
};

/// Builds a part for one autonomously driven vehicle. Receives the vehicle
/// id (the situation object id) and the shared world.
using SutFactory =
    std::function<std::shared_ptr<SystemPart>(std::int32_t vehicleId,
                                              std::shared_ptr<const WorldContext> world)>;

/// Everything buildMissionRun wires up. `runner` holds the parts; the
/// validators are also registered with it and shared here so callers can
/// inspect them after run().
struct MissionRun {
    std::shared_ptr<const WorldContext> world;
    std::unique_ptr<SimulationRunner> runner;
    std::vector<std::shared_ptr<Validator>> validators;
    std::int64_t durationUs = 0;
};

struct MissionRunOptions {
    std::uint64_t seed = 0;
    /// Recording of all bus traffic; empty disables recording.
    std::filesystem::path recordingPath;
    /// CSV vehicle trace (time_us,vehicle,x,y,heading,speed); empty disables.
    std::filesystem::path tracePath;
    /// One factory per externally driven situation object, in declaration
    /// order. Empty means "mission follower for each". A non-empty list
    /// whose size differs from the object count is a setup error.
    std::vector<SutFactory> sutFactories;
};

/// Resolves a vehicle's mission route from its effective configuration:
/// an explicit sut.mission.route list wins, otherwise the shortest route
/// between sut.mission.from and sut.mission.to. Throws SetupError when the
/// keys are missing or no route exists.
std::vector<scn::WaypointId> missionRoute(const scn::RouteGraph& graph,
                                          const ConfigurationSet& effective);

/// Builds the validator set for one vehicle from suite-style keys
/// (validator.destination.*, validator.route.*, validator.deviation.*)
/// plus the vehicle's mission keys, all expected in `config`.
std::vector<std::shared_ptr<Validator>> buildValidators(const scn::RouteGraph& graph,
                                                        const ConfigurationSet& config,
                                                        std::int32_t vehicleId);

/// Assembles a complete mission simulation: scripted traffic, one vehicle
/// model and one SUT per externally driven object, scanners, recording,
/// and the validator suite. `master` must carry global.sim.duration and
/// global.sim.step; per-vehicle missions come from sut.* keys (with
/// sut:<id>.* overrides applied through the standard configuration
/// filter). Suite keys are merged into the master set handed to the
/// supercomponent so SUTs see them via discovery.
MissionRun buildMissionRun(const scn::ScenarioModel& scenario,
                           const scn::SituationModel& situation,
                           const ConfigurationSet& master,
                           const ConfigurationSet& suite,
                           const MissionRunOptions& options);

/// Replays a recording through a validator set, producing the same
/// verdicts a live run with these validators would have produced.
struct OfflineEvaluation {
    std::vector<Verdict> verdicts;
    std::int64_t endTimeUs = 0;
    bool passed = false;
};

OfflineEvaluation evaluateRecording(const std::filesystem::path& recording,
                                    std::vector<std::shared_ptr<Validator>> validators);

} // namespace simkit::sim
