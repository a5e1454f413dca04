#include "simkit/dmcp.hpp"

#include <algorithm>

#include "simkit/error.hpp"
#include "simkit/messages.hpp"

namespace simkit {

std::string_view toString(LifecycleState state) {
    switch (state) {
        case LifecycleState::Discovered: return "DISCOVERED";
        case LifecycleState::Configured: return "CONFIGURED";
        case LifecycleState::Running: return "RUNNING";
        case LifecycleState::Unresponsive: return "UNRESPONSIVE";
        case LifecycleState::Terminated: return "TERMINATED";
    }
    return "?";
}

std::optional<LifecycleState> lifecycleFromString(std::string_view text) {
    if (text == "DISCOVERED") return LifecycleState::Discovered;
    if (text == "CONFIGURED") return LifecycleState::Configured;
    if (text == "RUNNING") return LifecycleState::Running;
    if (text == "UNRESPONSIVE") return LifecycleState::Unresponsive;
    if (text == "TERMINATED") return LifecycleState::Terminated;
    return std::nullopt;
}

ConfigurationSet filterConfigurationFor(const ConfigurationSet& master,
                                        std::string_view name,
                                        std::uint32_t instanceId) {
    std::string base(name);
    std::string basePrefix = base + ".";
    std::string instancePrefix = base + ":" + std::to_string(instanceId) + ".";

    struct Slot {
        std::string key;
        std::string value;
        bool fromInstance = false;
    };
    std::vector<Slot> slots;
    auto findSlot = [&](const std::string& key) -> Slot* {
        for (auto& s : slots) {
            if (s.key == key) return &s;
        }
        return nullptr;
    };

    for (const auto& e : master.entries()) {
        if (e.key.rfind("global.", 0) == 0) {
            slots.push_back(Slot{e.key, e.value, false});
        } else if (e.key.rfind(instancePrefix, 0) == 0) {
            // Renamed to the base key; wins over the base entry no
            // matter which came first in the master set.
            std::string renamed = basePrefix + e.key.substr(instancePrefix.size());
            if (Slot* s = findSlot(renamed)) {
                s->value = e.value;
                s->fromInstance = true;
            } else {
                slots.push_back(Slot{renamed, e.value, true});
            }
        } else if (e.key.rfind(basePrefix, 0) == 0) {
            if (Slot* s = findSlot(e.key)) {
                if (!s->fromInstance) s->value = e.value;
            } else {
                slots.push_back(Slot{e.key, e.value, false});
            }
        }
    }

    ConfigurationSet out;
    for (const auto& s : slots) {
        out.set(s.key, s.value);
    }
    return out;
}

Supercomponent::Supercomponent(ConfigurationSet master) : master_(std::move(master)) {
    double intervalS =
        master_.getDouble("global.dmcp.pulseinterval",
                          static_cast<double>(options_.pulseIntervalUs) / 1e6);
    std::int64_t pulses =
        master_.getInt("global.dmcp.timeoutpulses", options_.timeoutPulses);
    if (intervalS <= 0.0 || pulses <= 0) {
        throw ConfigError("global.dmcp.pulseinterval and global.dmcp.timeoutpulses "
                          "must be positive");
    }
    options_.pulseIntervalUs = static_cast<std::int64_t>(intervalS * 1e6);
    options_.timeoutPulses = static_cast<int>(pulses);
}

Supercomponent::TableEntry* Supercomponent::findEntry(const ModuleDescriptor& d) {
    for (auto& e : entries_) {
        if (e.descriptor.sameModule(d)) return &e;
    }
    return nullptr;
}

std::optional<Container> Supercomponent::onContainer(const Container& c,
                                                     std::int64_t nowUs) {
    if (c.dataTypeId == msg::kDiscover) {
        ModuleDescriptor d = msg::parseDiscover(c);
        TableEntry* entry = findEntry(d);
        if (!entry) {
            entries_.push_back(TableEntry{d, LifecycleState::Discovered, nowUs});
            entry = &entries_.back();
        }
        entry->descriptor = d;
        entry->lastSeenUs = nowUs;
        // Responding configures the module; re-discovery re-configures.
        entry->state = LifecycleState::Configured;
        ConfigurationSet subset = filterConfigurationFor(master_, d.name, d.instanceId);
        return msg::makeConfigResponse(d, subset, nowUs);
    }

    if (c.dataTypeId == msg::kPulse) {
        msg::Pulse pulse = msg::parsePulse(c);
        TableEntry* entry = findEntry(pulse.descriptor);
        if (!entry) {
            // Protocol warning: a module we never configured is pulsing.
            ++unknownPulses_;
            return std::nullopt;
        }
        entry->lastSeenUs = nowUs;
        if (pulse.state == LifecycleState::Terminated) {
            // Final: drop from the supervision table.
            entries_.erase(entries_.begin() + (entry - entries_.data()));
            return std::nullopt;
        }
        if (pulse.state == LifecycleState::Running &&
            (entry->state == LifecycleState::Configured ||
             entry->state == LifecycleState::Running ||
             entry->state == LifecycleState::Unresponsive)) {
            entry->state = LifecycleState::Running;
        }
        return std::nullopt;
    }

    return std::nullopt;
}

void Supercomponent::checkSupervision(std::int64_t nowUs) {
    std::int64_t silenceBudget =
        static_cast<std::int64_t>(options_.timeoutPulses) * options_.pulseIntervalUs;
    for (auto& e : entries_) {
        if (e.state != LifecycleState::Running) continue;
        if (nowUs - e.lastSeenUs >= silenceBudget) {
            e.state = LifecycleState::Unresponsive;
        }
    }
}

std::optional<LifecycleState> Supercomponent::stateOf(std::string_view name,
                                                      std::uint32_t instanceId) const {
    for (const auto& e : entries_) {
        if (e.descriptor.name == name && e.descriptor.instanceId == instanceId) {
            return e.state;
        }
    }
    return std::nullopt;
}

ConfigurationSet discover(const ModuleDescriptor& self, const DmcpEndpoint& endpoint,
                          const DiscoverOptions& options) {
    for (int attempt = 0; attempt < options.retries; ++attempt) {
        endpoint.send(msg::makeDiscover(self, endpoint.now()));
        auto deadline = std::chrono::steady_clock::now() + options.retryInterval;
        for (;;) {
            auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                deadline - std::chrono::steady_clock::now());
            if (remaining <= std::chrono::milliseconds::zero()) break;
            auto c = endpoint.receive(remaining);
            if (!c) break;
            if (c->dataTypeId != msg::kConfigResponse) continue;
            auto [who, config] = msg::parseConfigResponse(*c);
            if (who.sameModule(self)) return config;
        }
    }
    throw DiscoveryTimeout("module '" + self.name + "' got no configuration after " +
                           std::to_string(options.retries) + " attempts");
}

} // namespace simkit
