#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "simkit/bus.hpp"
#include "simkit/container.hpp"

namespace simkit {

/// Live conference endpoint on UDP multicast 239.255.42.<group>:12175.
/// Each datagram carries exactly one frame. Multicast loopback is
/// enabled, so an endpoint's own sends reach its local listeners the
/// same way remote traffic does.
class UdpConference : public Conference {
public:
    struct Options {
        /// Interface to join and send on. The loopback default keeps
        /// traffic on-host, which is what tests and single-machine
        /// deployments want; pass a NIC address to go on the wire.
        std::string interfaceAddress = "127.0.0.1";
    };

    explicit UdpConference(ConferenceId id) : UdpConference(id, Options{}) {}
    UdpConference(ConferenceId id, Options options);
    ~UdpConference() override;

    UdpConference(const UdpConference&) = delete;
    UdpConference& operator=(const UdpConference&) = delete;

    ConferenceId id() const { return id_; }

    void addListener(std::shared_ptr<DataStore> store,
                     TypeFilter filter = TypeFilter::all()) override;

    /// Encodes and sends one frame as one datagram.
    void send(const Container& c);

    /// Sends pre-encoded frame bytes verbatim (used for replay).
    void sendFrame(ByteView frame);

    /// Datagrams dropped because they did not parse as a frame.
    std::uint64_t frameErrors() const { return frameErrors_.load(); }

    static constexpr std::uint16_t kPort = 12175;
    static std::string groupAddress(ConferenceId id);

private:
    void receiveLoop();
    void deliver(const Container& c);

    struct Listener {
        std::shared_ptr<DataStore> store;
        TypeFilter filter;
    };

    ConferenceId id_;
    Options options_;
    int fd_ = -1;
    std::atomic<bool> running_{false};
    std::atomic<std::uint64_t> frameErrors_{0};
    std::thread receiver_;
    std::mutex mutex_;
    std::vector<Listener> listeners_;
};

} // namespace simkit
