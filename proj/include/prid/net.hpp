#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace prid {

// u32 little-endian length prefix framing over a connected socket.
// The payload's first byte is the message type on requests; responses
// carry bare JSON.
inline constexpr std::uint8_t kMsgSubmit = 0x01;
inline constexpr std::uint8_t kMsgQuery = 0x02;
inline constexpr std::uint8_t kMsgReserved = 0x7F;

// Hard cap on a single frame; anything larger is treated as a framing
// fault and the connection is dropped.
inline constexpr std::uint32_t kMaxFrameBytes = 64u * 1024 * 1024;

class Socket {
public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    ~Socket();
    Socket(Socket&& other) noexcept;
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;

    static Socket connect_to(const std::string& host, std::uint16_t port);

    void send_frame(const std::vector<std::uint8_t>& payload);
    // nullopt on orderly peer shutdown; throws IoError on faults.
    std::optional<std::vector<std::uint8_t>> recv_frame();

    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }
    void close();
    // Wakes a recv_frame blocked in another thread; the fd stays owned.
    void shutdown();

private:
    int fd_ = -1;
};

class Listener {
public:
    // Binds and listens; port 0 picks an ephemeral port.
    Listener(const std::string& bind_addr, std::uint16_t port);
    ~Listener();
    Listener(const Listener&) = delete;
    Listener& operator=(const Listener&) = delete;

    std::uint16_t port() const { return port_; }
    // Invalid socket after close() from another thread.
    Socket accept_connection();
    void close();

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

// "host:port" or ":port"; host defaults to 0.0.0.0.
std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& endpoint);

}  // namespace prid
