#include "prid/net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "prid/errors.hpp"

namespace prid {

static void write_all(int fd, const std::uint8_t* data, std::size_t n) {
    while (n > 0) {
        ssize_t w = ::send(fd, data, n, MSG_NOSIGNAL);
        if (w < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw IoError(std::string("send failed: ") + std::strerror(errno));
        }
        data += w;
        n -= static_cast<std::size_t>(w);
    }
}

// Returns false on clean EOF at the first byte.
static bool read_all(int fd, std::uint8_t* data, std::size_t n) {
    std::size_t got = 0;
    while (got < n) {
        ssize_t r = ::recv(fd, data + got, n - got, 0);
        if (r < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw IoError(std::string("recv failed: ") + std::strerror(errno));
        }
        if (r == 0) {
            if (got == 0) {
                return false;
            }
            throw IoError("connection closed mid-frame");
        }
        got += static_cast<std::size_t>(r);
    }
    return true;
}

Socket::~Socket() { close(); }

Socket::Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

Socket& Socket::operator=(Socket&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

void Socket::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

void Socket::shutdown() {
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
    }
}

Socket Socket::connect_to(const std::string& host, std::uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) {
        throw IoError(std::string("socket failed: ") + std::strerror(errno));
    }
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    const std::string resolved = (host == "localhost" || host.empty()) ? "127.0.0.1" : host;
    if (inet_pton(AF_INET, resolved.c_str(), &addr.sin_addr) != 1) {
        ::close(fd);
        throw IoError("invalid address: " + host);
    }
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        int e = errno;
        ::close(fd);
        throw IoError("connect to " + resolved + ":" + std::to_string(port) +
                      " failed: " + std::strerror(e));
    }
    int one = 1;
    setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    return Socket(fd);
}

void Socket::send_frame(const std::vector<std::uint8_t>& payload) {
    if (payload.size() > kMaxFrameBytes) {
        throw IoError("frame exceeds size cap");
    }
    const auto len = static_cast<std::uint32_t>(payload.size());
    std::uint8_t prefix[4] = {static_cast<std::uint8_t>(len), static_cast<std::uint8_t>(len >> 8),
                              static_cast<std::uint8_t>(len >> 16),
                              static_cast<std::uint8_t>(len >> 24)};
    write_all(fd_, prefix, 4);
    write_all(fd_, payload.data(), payload.size());
}

std::optional<std::vector<std::uint8_t>> Socket::recv_frame() {
    std::uint8_t prefix[4];
    if (!read_all(fd_, prefix, 4)) {
        return std::nullopt;
    }
    const std::uint32_t len = static_cast<std::uint32_t>(prefix[0]) |
                              (static_cast<std::uint32_t>(prefix[1]) << 8) |
                              (static_cast<std::uint32_t>(prefix[2]) << 16) |
                              (static_cast<std::uint32_t>(prefix[3]) << 24);
    if (len > kMaxFrameBytes) {
        throw IoError("oversized frame: " + std::to_string(len) + " bytes");
    }
    std::vector<std::uint8_t> payload(len);
    if (len > 0 && !read_all(fd_, payload.data(), len)) {
        throw IoError("connection closed mid-frame");
    }
    return payload;
}

Listener::Listener(const std::string& bind_addr, std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) {
        throw IoError(std::string("socket failed: ") + std::strerror(errno));
    }
    int one = 1;
    setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    const std::string resolved = bind_addr.empty() ? "0.0.0.0" : bind_addr;
    if (inet_pton(AF_INET, resolved == "localhost" ? "127.0.0.1" : resolved.c_str(),
                  &addr.sin_addr) != 1) {
        ::close(fd_);
        fd_ = -1;
        throw IoError("invalid bind address: " + bind_addr);
    }
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
        ::listen(fd_, 64) != 0) {
        int e = errno;
        ::close(fd_);
        fd_ = -1;
        throw IoError("bind/listen on " + resolved + ":" + std::to_string(port) +
                      " failed: " + std::strerror(e));
    }
    socklen_t len = sizeof(addr);
    getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

Listener::~Listener() { close(); }

void Listener::close() {
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
        fd_ = -1;
    }
}

Socket Listener::accept_connection() {
    int client = ::accept(fd_, nullptr, nullptr);
    if (client < 0) {
        return Socket();
    }
    int one = 1;
    setsockopt(client, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    return Socket(client);
}

std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& endpoint) {
    auto colon = endpoint.rfind(':');
    if (colon == std::string::npos) {
        throw ConfigError("endpoint must be host:port, got \"" + endpoint + "\"");
    }
    std::string host = endpoint.substr(0, colon);
    const std::string port_str = endpoint.substr(colon + 1);
    try {
        unsigned long port = std::stoul(port_str);
        if (port > 0xFFFF) {
            throw ConfigError("port out of range in \"" + endpoint + "\"");
        }
        return {host, static_cast<std::uint16_t>(port)};
    } catch (const std::logic_error&) {
        throw ConfigError("invalid port in \"" + endpoint + "\"");
    }
}

}  // namespace prid
