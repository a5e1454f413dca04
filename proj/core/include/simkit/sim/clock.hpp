#pragma once

#include <cstdint>

#include "simkit/error.hpp"

namespace simkit::sim {

/// Simulated time. Advances only when the run loop says so, in exact
/// step multiples; wall-clock time never leaks in.
class ControlledClock {
public:
    explicit ControlledClock(std::int64_t stepUs = 10000) : stepUs_(stepUs) {
        if (stepUs_ <= 0) throw Error("clock step must be positive");
    }

    std::int64_t now() const { return nowUs_; }
    std::int64_t stepUs() const { return stepUs_; }

    void advance() { nowUs_ += stepUs_; }

private:
    std::int64_t stepUs_;
    std::int64_t nowUs_ = 0;
};

} // namespace simkit::sim
