#include "simkit/sim/runner.hpp"

#include <string>

#include "simkit/error.hpp"
#include "simkit/messages.hpp"

namespace simkit::sim {

namespace {

std::string statusWord(bool passed) { return passed ? "PASSED" : "FAILED"; }

} // namespace

std::string toLine(const VerdictLine& verdict) {
    return "VALIDATOR " + verdict.validator + " vehicle=" +
           std::to_string(verdict.vehicleId) + " " + statusWord(verdict.passed) + " " +
           verdict.detail;
}

std::string RunReport::toText() const {
    std::string out;
    for (const auto& v : verdicts) {
        out += toLine(v) + "\n";
    }
    out += "RUN " + statusWord(passed) + " slices=" + std::to_string(slices) +
           " simtime=" + std::to_string(simtimeUs);
    if (abort) {
        out += " abort=" + *abort;
    }
    out += "\n";
    return out;
}

/// The runner's own context part: answers DISCOVER, digests pulses,
/// applies the missed-pulse rule. Registered first so its replies beat
/// everyone else's traffic to the next delivery point.
class SimulationRunner::SupercomponentPart : public SystemPart {
public:
    explicit SupercomponentPart(Supercomponent* super) : super_(super) {}

    std::string name() const override { return "supercomponent"; }
    PartKind kind() const override { return PartKind::Context; }

    void attach(BusHandle& bus) override {
        bus_ = &bus;
        store_ = bus.listen(StoreKind::Fifo,
                            TypeFilter{msg::kDiscover, msg::kPulse});
    }

    void step(std::int64_t nowUs) override {
        drain(nowUs);
        super_->checkSupervision(nowUs);
    }

    /// Also used while pumping setup-time discovery.
    void drain(std::int64_t nowUs) {
        while (auto c = store_->take()) {
            if (auto reply = super_->onContainer(*c, nowUs)) {
                bus_->send(*reply);
            }
        }
    }

private:
    Supercomponent* super_;
    BusHandle* bus_ = nullptr;
    std::shared_ptr<DataStore> store_;
};

/// Internal observer feeding VehicleState samples to the validators.
class SimulationRunner::ValidatorFeedPart : public SystemPart {
public:
    explicit ValidatorFeedPart(std::vector<std::shared_ptr<Validator>>* validators)
        : validators_(validators) {}

    std::string name() const override { return "validator-feed"; }
    PartKind kind() const override { return PartKind::Observer; }

    void attach(BusHandle& bus) override {
        store_ = bus.listen(StoreKind::Fifo, TypeFilter{msg::kVehicleState});
    }

    void step(std::int64_t) override {
        while (auto c = store_->take()) {
            auto sample = traceSampleFrom(*c);
            if (!sample) continue;
            for (auto& v : *validators_) {
                v->onSample(*sample);
            }
        }
    }

private:
    std::vector<std::shared_ptr<Validator>>* validators_;
    std::shared_ptr<DataStore> store_;
};

SimulationRunner::SimulationRunner(ConfigurationSet master, std::int64_t stepUs,
                                   std::uint64_t seed)
    : master_(std::move(master)),
      clock_(stepUs),
      conference_(ConferenceId(1)),
      supercomponent_(master_),
      seed_(seed),
      seedStream_(seed) {
    supercomponentPart_ = std::make_shared<SupercomponentPart>(&supercomponent_);
    addPart(supercomponentPart_);
}

void SimulationRunner::addPart(std::shared_ptr<SystemPart> part) {
    if (ran_) throw SetupError("parts must be registered before run()");
    if (!part) throw SetupError("null part");
    parts_.push_back(Registered{std::move(part), nullptr});
}

void SimulationRunner::addValidator(std::shared_ptr<Validator> validator) {
    if (ran_) throw SetupError("validators must be registered before run()");
    if (!validator) throw SetupError("null validator");
    validators_.push_back(std::move(validator));
}

std::uint64_t SimulationRunner::drawSeed() {
    return seedStream_();
}

void SimulationRunner::pumpSetup() {
    // One round trip: requests out, supercomponent answers, replies out.
    conference_.deliverPending();
    supercomponentPart_->drain(clock_.now());
    conference_.deliverPending();
}

RunReport SimulationRunner::run(std::int64_t durationUs) {
    if (ran_) throw SetupError("a runner instance runs once");
    ran_ = true;
    if (durationUs <= 0 || durationUs % clock_.stepUs() != 0) {
        throw SetupError("duration must be a positive multiple of the step");
    }

    if (!validators_.empty()) {
        addPartUnlockedForFeed();
    }

    // Phase A: every part gets its sender slot and registers listeners,
    // in registration order. No traffic may flow yet.
    for (auto& r : parts_) {
        bool canSend = r.part->kind() != PartKind::Observer;
        r.handle = std::make_unique<BusHandle>(&conference_, conference_.createSender(),
                                               canSend);
        r.part->attach(*r.handle);
    }

    // Phase B: SUT parts complete DMCP discovery against the embedded
    // supercomponent, with deliveries pumped between sends.
    class Pump : public SetupPump {
    public:
        explicit Pump(SimulationRunner* r) : runner_(r) {}
        void pump() override { runner_->pumpSetup(); }
        std::int64_t nowUs() const override { return runner_->clock_.now(); }

    private:
        SimulationRunner* runner_;
    } pump(this);

    for (auto& r : parts_) {
        r.part->configure(pump);
    }

    RunReport report;
    std::uint64_t totalSlices = static_cast<std::uint64_t>(durationUs / clock_.stepUs());
    std::uint64_t executed = 0;
    for (std::uint64_t slice = 0; slice < totalSlices; ++slice) {
        std::int64_t now = clock_.now();
        const SystemPart* active = nullptr;
        try {
            conference_.deliverPending();
            for (auto& r : parts_) {
                if (r.part->kind() != PartKind::Context) continue;
                active = r.part.get();
                r.part->step(now);
            }
            for (auto& r : parts_) {
                if (r.part->kind() != PartKind::Sut) continue;
                active = r.part.get();
                r.part->step(now);
            }
            for (auto& r : parts_) {
                if (r.part->kind() != PartKind::Observer) continue;
                active = r.part.get();
                r.part->step(now);
            }
        } catch (const std::exception& e) {
            report.abort = (active ? active->name() : std::string("runner")) + ":" +
                           std::to_string(slice) + " (" + e.what() + ")";
            executed = slice + 1;
            clock_.advance();
            break;
        }
        executed = slice + 1;
        clock_.advance();

        bool allFinal = !validators_.empty();
        for (const auto& v : validators_) {
            if (!v->finalized()) allFinal = false;
        }
        if (allFinal) break;
    }

    // Final delivery point: the last slice's sends reach the observers
    // (recorder, validators) before verdicts freeze.
    if (!report.abort) {
        try {
            conference_.deliverPending();
            for (auto& r : parts_) {
                if (r.part->kind() != PartKind::Observer) continue;
                r.part->step(clock_.now());
            }
        } catch (const std::exception& e) {
            report.abort = std::string("final-drain:") + std::to_string(executed) +
                           " (" + e.what() + ")";
        }
    }

    for (auto& r : parts_) {
        r.part->teardown();
    }

    std::int64_t endUs = static_cast<std::int64_t>(executed) * clock_.stepUs();
    bool verdictsPassed = true;
    for (auto& v : validators_) {
        v->finish(endUs);
        const Verdict& verdict = v->verdict();
        report.verdicts.push_back(VerdictLine{verdict.validatorName, verdict.vehicleId,
                                              verdict.passed, verdict.detail});
        if (!verdict.passed) verdictsPassed = false;
    }

    report.slices = executed;
    report.simtimeUs = endUs;
    report.passed = verdictsPassed && !report.abort;
    return report;
}

// The validator feed joins as the last observer so user-registered
// observers (the recorder) run first in each slice.
void SimulationRunner::addPartUnlockedForFeed() {
    parts_.push_back(Registered{std::make_shared<ValidatorFeedPart>(&validators_), nullptr});
}

} // namespace simkit::sim
