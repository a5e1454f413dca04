#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "simkit/container.hpp"
#include "simkit/datastore.hpp"
#include "simkit/error.hpp"

namespace simkit {

/// Conference group number, 1..254. Maps onto the live transport's
/// multicast address 239.255.42.<group>.
class ConferenceId {
public:
    explicit ConferenceId(std::uint8_t group) : group_(group) {
        if (group_ == 0 || group_ == 255) {
            throw Error("conference group must be in 1..254");
        }
    }

    std::uint8_t group() const { return group_; }

    friend bool operator==(ConferenceId a, ConferenceId b) {
        return a.group_ == b.group_;
    }

private:
    std::uint8_t group_;
};

/// Selects which dataTypeIds a listener receives. An empty filter
/// accepts everything.
class TypeFilter {
public:
    TypeFilter() = default;
    TypeFilter(std::initializer_list<std::uint32_t> ids) : ids_(ids) {}

    static TypeFilter all() { return TypeFilter{}; }

    bool accepts(std::uint32_t dataTypeId) const {
        if (ids_.empty()) return true;
        for (auto id : ids_) {
            if (id == dataTypeId) return true;
        }
        return false;
    }

    bool acceptsAll() const { return ids_.empty(); }

private:
    std::vector<std::uint32_t> ids_;
};

/// Common conference interface. Senders publish containers; every
/// listener whose filter matches receives each container exactly once,
/// including containers published by the same endpoint.
class Conference {
public:
    virtual ~Conference() = default;

    /// Registers a store fed by matching containers. A given store may
    /// be registered at most once per conference.
    virtual void addListener(std::shared_ptr<DataStore> store,
                             TypeFilter filter = TypeFilter::all()) = 0;
};

class SimConference;

/// Sending endpoint on a SimConference. Order of sends from one sender
/// is preserved end to end.
class SimSender {
public:
    void send(const Container& c);

private:
    friend class SimConference;
    SimSender(SimConference* owner, std::size_t slot)
        : owner_(owner), slot_(slot) {}

    SimConference* owner_;
    std::size_t slot_;
};

/// Deterministic in-process conference. Sends are queued per sender and
/// handed to listeners only at explicit delivery points, ordered by
/// sender registration and, within a sender, by send order. This gives
/// simulation parts a reproducible one-slice message latency.
class SimConference : public Conference {
public:
    explicit SimConference(ConferenceId id) : id_(id) {}

    ConferenceId id() const { return id_; }

    std::shared_ptr<SimSender> createSender();

    void addListener(std::shared_ptr<DataStore> store,
                     TypeFilter filter = TypeFilter::all()) override;

    /// Drains all queued sends into matching listener stores. Returns
    /// the number of containers delivered.
    std::size_t deliverPending();

    /// True if any sender has a queued, undelivered container.
    bool hasPending() const;

private:
    friend class SimSender;
    void enqueue(std::size_t slot, const Container& c);

    struct Listener {
        std::shared_ptr<DataStore> store;
        TypeFilter filter;
    };

    ConferenceId id_;
    mutable std::mutex mutex_;
    std::vector<std::deque<Container>> queues_;   // one per sender slot
    std::vector<Listener> listeners_;
};

} // namespace simkit
