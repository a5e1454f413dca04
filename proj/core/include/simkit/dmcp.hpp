#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simkit/config.hpp"
#include "simkit/container.hpp"

namespace simkit {

/// Identity of a configurable component. (name, instanceId) is the
/// lookup key on a conference; version is informational.
struct ModuleDescriptor {
    std::string name;
    std::uint32_t instanceId = 0;
    std::string version;

    bool sameModule(const ModuleDescriptor& other) const {
        return name == other.name && instanceId == other.instanceId;
    }

    friend bool operator==(const ModuleDescriptor&, const ModuleDescriptor&) = default;
};

enum class LifecycleState { Discovered, Configured, Running, Unresponsive, Terminated };

std::string_view toString(LifecycleState state);
std::optional<LifecycleState> lifecycleFromString(std::string_view text);

/// The configuration subset a module receives on discovery: every
/// "global." key, every "<name>." key, and every "<name>:<instanceId>."
/// key renamed to "<name>.<tail>". Instance-qualified keys override the
/// base key regardless of where they sit in the master set; master
/// order is otherwise preserved.
ConfigurationSet filterConfigurationFor(const ConfigurationSet& master,
                                        std::string_view name,
                                        std::uint32_t instanceId);

/// The configuration-and-supervision authority of a conference. Event-
/// serialized: feed received containers to onContainer() and broadcast
/// whatever it returns; call checkSupervision() periodically.
class Supercomponent {
public:
    struct Options {
        std::int64_t pulseIntervalUs = 1'000'000;
        int timeoutPulses = 3;
    };

    /// Reads global.dmcp.pulseinterval (seconds) and
    /// global.dmcp.timeoutpulses from the master configuration.
    explicit Supercomponent(ConfigurationSet master);

    /// Handles one received container. A DISCOVER yields the
    /// CONFIG-RESPONSE container to broadcast; pulses update the
    /// supervision table and yield nothing. Unknown dataTypeIds are
    /// ignored.
    std::optional<Container> onContainer(const Container& c, std::int64_t nowUs);

    /// Applies the missed-pulse rule: a RUNNING module silent for
    /// timeoutPulses * pulseInterval becomes UNRESPONSIVE.
    void checkSupervision(std::int64_t nowUs);

    struct TableEntry {
        ModuleDescriptor descriptor;
        LifecycleState state = LifecycleState::Discovered;
        std::int64_t lastSeenUs = 0;
    };

    /// Discovered, non-terminated modules in discovery order.
    const std::vector<TableEntry>& table() const { return entries_; }

    std::optional<LifecycleState> stateOf(std::string_view name,
                                          std::uint32_t instanceId) const;

    /// Pulses received from descriptors never seen in a DISCOVER.
    std::uint64_t unknownPulseCount() const { return unknownPulses_; }

    const ConfigurationSet& master() const { return master_; }
    const Options& options() const { return options_; }

private:
    TableEntry* findEntry(const ModuleDescriptor& descriptor);

    ConfigurationSet master_;
    Options options_;
    std::vector<TableEntry> entries_;
    std::uint64_t unknownPulses_ = 0;
};

/// Transport shim for the component side of discovery, so the same
/// logic runs over the live conference, the simulated one, and test
/// doubles. receive() returns the next container addressed to us or
/// nullopt at timeout; now() supplies send timestamps in microseconds.
struct DmcpEndpoint {
    std::function<void(const Container&)> send;
    std::function<std::optional<Container>(std::chrono::milliseconds)> receive;
    std::function<std::int64_t()> now;
};

struct DiscoverOptions {
    int retries = 3;
    std::chrono::milliseconds retryInterval{1000};
};

/// Broadcasts DISCOVER and waits for the matching CONFIG-RESPONSE,
/// retrying per `options`. Returns the module's configuration subset or
/// throws DiscoveryTimeout; a component must not start without it.
ConfigurationSet discover(const ModuleDescriptor& self, const DmcpEndpoint& endpoint,
                          const DiscoverOptions& options = {});

} // namespace simkit
