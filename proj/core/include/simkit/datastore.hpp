#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <map>
#include <mutex>
#include <optional>

#include "simkit/container.hpp"

namespace simkit {

enum class StoreKind { Fifo, Lifo, KeyValue };

/// Listener-side container store. Safe for concurrent producer/consumer
/// use; the live transport's receive loop pushes while the owner takes.
///
///   Fifo      containers leave in arrival order; at capacity the oldest
///             is dropped to admit the new one
///   Lifo      the most recently arrived container is returned first;
///             at capacity the oldest is dropped
///   KeyValue  retains exactly the latest container per dataTypeId
class DataStore {
public:
    /// capacity 0 means unbounded. KeyValue stores are always unbounded
    /// (one slot per dataTypeId).
    explicit DataStore(StoreKind kind, std::size_t capacity = 0)
        : kind_(kind), capacity_(capacity) {}

    StoreKind kind() const { return kind_; }

    void push(const Container& c);

    /// Non-blocking take. Fifo: oldest; Lifo: newest; KeyValue: entry
    /// with the smallest dataTypeId.
    std::optional<Container> take();

    /// Blocking take, waiting up to `timeout` for a container.
    std::optional<Container> takeFor(std::chrono::milliseconds timeout);

    /// KeyValue only: the retained container for `dataTypeId`, if any.
    std::optional<Container> latest(std::uint32_t dataTypeId) const;

    std::size_t size() const;
    bool empty() const { return size() == 0; }
    void clear();

private:
    std::optional<Container> takeLocked();

    StoreKind kind_;
    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::condition_variable available_;
    std::deque<Container> queue_;                 // Fifo/Lifo
    std::map<std::uint32_t, Container> byType_;   // KeyValue
};

} // namespace simkit
