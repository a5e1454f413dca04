#include "simkit/bus.hpp"

namespace simkit {

void SimSender::send(const Container& c) {
    owner_->enqueue(slot_, c);
}

std::shared_ptr<SimSender> SimConference::createSender() {
    std::lock_guard<std::mutex> lock(mutex_);
    std::size_t slot = queues_.size();
    queues_.emplace_back();
    // SimSender's constructor is private; wrap it for make_shared.
    return std::shared_ptr<SimSender>(new SimSender(this, slot));
}

void SimConference::addListener(std::shared_ptr<DataStore> store,
                                TypeFilter filter) {
    if (!store) throw Error("conference listener store must not be null");
    std::lock_guard<std::mutex> lock(mutex_);
    for (const auto& l : listeners_) {
        if (l.store == store) {
            throw Error("store is already registered on this conference");
        }
    }
    listeners_.push_back(Listener{std::move(store), std::move(filter)});
}

void SimConference::enqueue(std::size_t slot, const Container& c) {
    std::lock_guard<std::mutex> lock(mutex_);
    queues_[slot].push_back(c);
}

std::size_t SimConference::deliverPending() {
    // Snapshot under the lock, deliver outside it: DataStore::push takes
    // its own lock and listeners may be inspected concurrently.
    std::vector<Container> batch;
    std::vector<Listener> sinks;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (auto& q : queues_) {
            for (auto& c : q) batch.push_back(std::move(c));
            q.clear();
        }
        sinks = listeners_;
    }
    for (const auto& c : batch) {
        for (const auto& l : sinks) {
            if (l.filter.accepts(c.dataTypeId)) l.store->push(c);
        }
    }
    return batch.size();
}

bool SimConference::hasPending() const {
    std::lock_guard<std::mutex> lock(mutex_);
    for (const auto& q : queues_) {
        if (!q.empty()) return true;
    }
    return false;
}

} // namespace simkit
