#pragma once

#include <memory>
#include <string>

#include "simkit/bus.hpp"
#include "simkit/error.hpp"

namespace simkit::sim {

enum class PartKind { Context, Sut, Observer };

/// A part's window onto the conference. Observer handles refuse to
/// send; that is what makes validators and the recorder provably
/// non-invasive.
class BusHandle {
public:
    BusHandle(SimConference* conference, std::shared_ptr<SimSender> sender, bool canSend)
        : conference_(conference), sender_(std::move(sender)), canSend_(canSend) {}

    void send(const Container& c) {
        if (!canSend_) {
            throw Error("observer parts cannot send containers");
        }
        sender_->send(c);
    }

    /// Creates a store and registers it on the conference.
    std::shared_ptr<DataStore> listen(StoreKind kind,
                                      TypeFilter filter = TypeFilter::all(),
                                      std::size_t capacity = 0) {
        auto store = std::make_shared<DataStore>(kind, capacity);
        conference_->addListener(store, std::move(filter));
        return store;
    }

    bool canSend() const { return canSend_; }

private:
    SimConference* conference_;
    std::shared_ptr<SimSender> sender_;
    bool canSend_;
};

/// Lets SUT parts pump setup-time traffic (DMCP discovery) before the
/// first slice: each pump() delivers pending containers, lets the
/// embedded supercomponent answer, and delivers again.
class SetupPump {
public:
    virtual ~SetupPump() = default;
    virtual void pump() = 0;
    virtual std::int64_t nowUs() const = 0;
};

/// A component of the simulated system. Lifecycle:
///   attach(bus)    register listener stores; keep the handle; no sends
///   configure(...) SUT parts complete DMCP discovery (sends allowed)
///   step(now)      once per slice, in kind order (context, SUT,
///                  observer) and registration order within a kind
///   teardown()     after the last slice
class SystemPart {
public:
    virtual ~SystemPart() = default;

    virtual std::string name() const = 0;
    virtual PartKind kind() const = 0;

    virtual void attach(BusHandle& bus) { (void)bus; }
    virtual void configure(SetupPump& pump) { (void)pump; }
    virtual void step(std::int64_t nowUs) = 0;
    virtual void teardown() {}
};

} // namespace simkit::sim
