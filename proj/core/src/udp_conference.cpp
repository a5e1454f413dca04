#include "simkit/udp_conference.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "simkit/error.hpp"

namespace simkit {

namespace {

[[noreturn]] void throwErrno(const std::string& what) {
    throw TransportError(what + ": " + std::strerror(errno));
}

} // namespace

std::string UdpConference::groupAddress(ConferenceId id) {
    return "239.255.42." + std::to_string(id.group());
}

UdpConference::UdpConference(ConferenceId id, Options options)
    : id_(id), options_(std::move(options)) {
    fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd_ < 0) throwErrno("socket");

    int on = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &on, sizeof(on));
#ifdef SO_REUSEPORT
    // Lets several endpoints on this host join the same conference.
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEPORT, &on, sizeof(on));
#endif

    sockaddr_in local{};
    local.sin_family = AF_INET;
    local.sin_addr.s_addr = htonl(INADDR_ANY);
    local.sin_port = htons(kPort);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&local), sizeof(local)) < 0) {
        int e = errno;
        ::close(fd_);
        errno = e;
        throwErrno("bind");
    }

    in_addr iface{};
    if (::inet_pton(AF_INET, options_.interfaceAddress.c_str(), &iface) != 1) {
        ::close(fd_);
        throw TransportError("bad interface address: " + options_.interfaceAddress);
    }

    ip_mreq membership{};
    ::inet_pton(AF_INET, groupAddress(id_).c_str(), &membership.imr_multiaddr);
    membership.imr_interface = iface;
    if (::setsockopt(fd_, IPPROTO_IP, IP_ADD_MEMBERSHIP, &membership,
                     sizeof(membership)) < 0) {
        int e = errno;
        ::close(fd_);
        errno = e;
        throwErrno("join multicast group");
    }

    ::setsockopt(fd_, IPPROTO_IP, IP_MULTICAST_IF, &iface, sizeof(iface));
    unsigned char loop = 1;
    ::setsockopt(fd_, IPPROTO_IP, IP_MULTICAST_LOOP, &loop, sizeof(loop));
    unsigned char ttl = 1;
    ::setsockopt(fd_, IPPROTO_IP, IP_MULTICAST_TTL, &ttl, sizeof(ttl));

    running_ = true;
    receiver_ = std::thread([this] { receiveLoop(); });
}

UdpConference::~UdpConference() {
    running_ = false;
    if (receiver_.joinable()) receiver_.join();
    if (fd_ >= 0) ::close(fd_);
}

void UdpConference::addListener(std::shared_ptr<DataStore> store,
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

void UdpConference::send(const Container& c) {
    sendFrame(encodeFrame(c));
}

void UdpConference::sendFrame(ByteView frame) {
    if (frame.size() > kMaxDatagramSize) {
        throw SendError("frame of " + std::to_string(frame.size()) +
                        " bytes exceeds the " +
                        std::to_string(kMaxDatagramSize) +
                        "-byte datagram limit");
    }
    sockaddr_in dest{};
    dest.sin_family = AF_INET;
    dest.sin_port = htons(kPort);
    ::inet_pton(AF_INET, groupAddress(id_).c_str(), &dest.sin_addr);
    ssize_t n = ::sendto(fd_, frame.data(), frame.size(), 0,
                         reinterpret_cast<sockaddr*>(&dest), sizeof(dest));
    if (n < 0) throwErrno("sendto");
    if (static_cast<std::size_t>(n) != frame.size()) {
        throw TransportError("short datagram send");
    }
}

void UdpConference::receiveLoop() {
    std::vector<std::uint8_t> buffer(65536);
    while (running_) {
        pollfd pfd{fd_, POLLIN, 0};
        int ready = ::poll(&pfd, 1, 100);
        if (ready <= 0) continue;
        ssize_t n = ::recvfrom(fd_, buffer.data(), buffer.size(), 0,
                               nullptr, nullptr);
        if (n <= 0) continue;
        try {
            Container c = decodeFrame(ByteView(buffer.data(),
                                               static_cast<std::size_t>(n)));
            deliver(c);
        } catch (const FrameError&) {
            frameErrors_.fetch_add(1);
        }
    }
}

void UdpConference::deliver(const Container& c) {
    std::vector<Listener> sinks;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        sinks = listeners_;
    }
    for (const auto& l : sinks) {
        if (l.filter.accepts(c.dataTypeId)) l.store->push(c);
    }
}

} // namespace simkit
