#ifndef WDSIM_TYPES_HPP
#define WDSIM_TYPES_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "wdsim/error.hpp"

namespace wdsim {

struct NodeId {
    uint32_t value = 0;
    auto operator<=>(const NodeId&) const = default;
};

struct GroupId {
    uint32_t value = 0;
    auto operator<=>(const GroupId&) const = default;
};

// Role of a node within one group. A node holds at most one role per group
// and the role is fixed for the group's lifetime.
enum class Role { Go, Gm, Lc, Detached };

const char* to_string(Role r);

// Wlan is the standard WiFi attachment (how an LC connects); P2p is the
// WiFi Direct attachment (GO/GM). A node has at most one live attachment
// of each kind.
enum class InterfaceKind { Wlan, P2p };

const char* to_string(InterfaceKind k);

enum class Stack { Stock, NonStock };

const char* to_string(Stack s);

enum class AttachMode { TimeSharing, Simultaneous };

const char* to_string(AttachMode m);

// GO negotiation intent, bounded to [0, 15].
class IntentValue {
  public:
    explicit IntentValue(int value) : value_(value) {
        if (value < 0 || value > 15) {
            throw SimError(ErrorCode::InvalidArgument,
                           "intent value out of range [0,15]: " + std::to_string(value));
        }
    }

    int value() const { return value_; }
    auto operator<=>(const IntentValue&) const = default;

  private:
    int value_;
};

struct Ipv4Addr {
    std::array<uint8_t, 4> octets{0, 0, 0, 0};

    static Ipv4Addr of(uint8_t a, uint8_t b, uint8_t c, uint8_t d) {
        return Ipv4Addr{{a, b, c, d}};
    }

    uint32_t as_u32() const {
        return (uint32_t(octets[0]) << 24) | (uint32_t(octets[1]) << 16) |
               (uint32_t(octets[2]) << 8) | uint32_t(octets[3]);
    }

    std::string to_string() const;

    auto operator<=>(const Ipv4Addr&) const = default;
};

// Channel abstraction offered by the platform sockets: reliable ordered
// stream, best-effort datagram, or a multicast socket bound to one
// interface (the only kind where the sender picks the interface).
struct ChannelKind {
    enum class Tag { Stream, Datagram, Multicast };

    Tag tag = Tag::Stream;
    InterfaceKind bound = InterfaceKind::Wlan; // meaningful for Multicast only

    static ChannelKind stream() { return {Tag::Stream, InterfaceKind::Wlan}; }
    static ChannelKind datagram() { return {Tag::Datagram, InterfaceKind::Wlan}; }
    static ChannelKind multicast(InterfaceKind k) { return {Tag::Multicast, k}; }

    bool is_multicast() const { return tag == Tag::Multicast; }
    bool is_unicast() const { return tag != Tag::Multicast; }

    auto operator<=>(const ChannelKind&) const = default;
};

struct Payload {
    int64_t size_bytes = 0;
    int32_t chunk_size_bytes = 1400;

    int64_t chunk_count() const {
        if (size_bytes == 0) return 0;
        return (size_bytes + chunk_size_bytes - 1) / chunk_size_bytes;
    }

    // Size of chunk i; only the final chunk may be short.
    int64_t chunk_bytes(int64_t i) const {
        const int64_t full = size_bytes / chunk_size_bytes;
        if (i < full) return chunk_size_bytes;
        return size_bytes - full * chunk_size_bytes;
    }
};

enum class Direction { Tx, Rx };

} // namespace wdsim

#endif
