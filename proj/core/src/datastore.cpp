#include "simkit/datastore.hpp"

#include "simkit/error.hpp"

namespace simkit {

void DataStore::push(const Container& c) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (kind_ == StoreKind::KeyValue) {
            byType_[c.dataTypeId] = c;
        } else {
            if (capacity_ > 0 && queue_.size() == capacity_) {
                queue_.pop_front();
            }
            queue_.push_back(c);
        }
    }
    available_.notify_one();
}

std::optional<Container> DataStore::takeLocked() {
    if (kind_ == StoreKind::KeyValue) {
        if (byType_.empty()) return std::nullopt;
        auto it = byType_.begin();
        Container c = std::move(it->second);
        byType_.erase(it);
        return c;
    }
    if (queue_.empty()) return std::nullopt;
    Container c;
    if (kind_ == StoreKind::Fifo) {
        c = std::move(queue_.front());
        queue_.pop_front();
    } else {
        c = std::move(queue_.back());
        queue_.pop_back();
    }
    return c;
}

std::optional<Container> DataStore::take() {
    std::lock_guard<std::mutex> lock(mutex_);
    return takeLocked();
}

std::optional<Container> DataStore::takeFor(std::chrono::milliseconds timeout) {
    std::unique_lock<std::mutex> lock(mutex_);
    available_.wait_for(lock, timeout, [this] {
        return kind_ == StoreKind::KeyValue ? !byType_.empty() : !queue_.empty();
    });
    return takeLocked();
}

std::optional<Container> DataStore::latest(std::uint32_t dataTypeId) const {
    if (kind_ != StoreKind::KeyValue) {
        throw Error("latest() is only defined for KeyValue stores");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = byType_.find(dataTypeId);
    if (it == byType_.end()) return std::nullopt;
    return it->second;
}

std::size_t DataStore::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return kind_ == StoreKind::KeyValue ? byType_.size() : queue_.size();
}

void DataStore::clear() {
    std::lock_guard<std::mutex> lock(mutex_);
    queue_.clear();
    byType_.clear();
}

} // namespace simkit
