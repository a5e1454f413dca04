#pragma once

#include <memory>
#include <random>
#include <vector>

#include "simkit/bus.hpp"
#include "simkit/config.hpp"
#include "simkit/dmcp.hpp"
#include "simkit/sim/clock.hpp"
#include "simkit/sim/part.hpp"
#include "simkit/sim/report.hpp"
#include "simkit/validators.hpp"

namespace simkit::sim {

/// Owns simulated time and all communication of one run: an in-process
/// conference, a controlled clock, an embedded supercomponent, and the
/// registered system parts. Strictly single-threaded.
///
/// Each slice runs in fixed order: deliver the previous slice's
/// containers (sender registration order, then send order), step
/// context parts, step SUT parts, then notify observers. The run ends
/// at the configured duration, early once every validator is final, or
/// on the first part exception (abort).
class SimulationRunner {
public:
    SimulationRunner(ConfigurationSet master, std::int64_t stepUs, std::uint64_t seed);

    /// Parts step in registration order within their kind. Call before
    /// run(); the runner attaches and configures them there.
    void addPart(std::shared_ptr<SystemPart> part);

    /// Validators finalize the run report; they are fed by an internal
    /// observer that watches VehicleState traffic.
    void addValidator(std::shared_ptr<Validator> validator);

    /// durationUs must be a positive multiple of the step.
    RunReport run(std::int64_t durationUs);

    ControlledClock& clock() { return clock_; }
    SimConference& conference() { return conference_; }
    Supercomponent& supercomponent() { return supercomponent_; }
    const ConfigurationSet& master() const { return master_; }
    std::uint64_t seed() const { return seed_; }

    /// Deterministic sub-seed for a named consumer (scanner noise and
    /// friends); derived from the run seed and the draw order.
    std::uint64_t drawSeed();

private:
    class SupercomponentPart;
    class ValidatorFeedPart;

    struct Registered {
        std::shared_ptr<SystemPart> part;
        std::unique_ptr<BusHandle> handle;
    };

    void pumpSetup();
    void addPartUnlockedForFeed();

    ConfigurationSet master_;
    ControlledClock clock_;
    SimConference conference_;
    Supercomponent supercomponent_;
    std::uint64_t seed_;
    std::mt19937_64 seedStream_;

    std::vector<Registered> parts_;  // registration order, all kinds
    std::vector<std::shared_ptr<Validator>> validators_;
    std::shared_ptr<SupercomponentPart> supercomponentPart_;
    bool ran_ = false;
};

} // namespace simkit::sim
