#ifndef WDSIM_ADDRESSING_HPP
#define WDSIM_ADDRESSING_HPP

#include <optional>
#include <vector>

#include "wdsim/topology.hpp"
#include "wdsim/types.hpp"

namespace wdsim {

// DHCP scope of one group. Under the stock stack every group shares
// 192.168.49.0/24 with the GO pinned at .1; the non-stock stack gives
// group k the disjoint subnet 192.168.(49+k).0/24.
struct AddressScope {
    Ipv4Addr go_address;
    Ipv4Addr range_lo; // first client address (inclusive)
    Ipv4Addr range_hi; // last client address (inclusive)

    bool contains(Ipv4Addr a) const {
        return a.as_u32() >= (go_address.as_u32() & 0xFFFFFF00u) &&
               a.as_u32() <= range_hi.as_u32();
    }
    int capacity() const { return int(range_hi.as_u32() - range_lo.as_u32()) + 1; }

    auto operator<=>(const AddressScope&) const = default;
};

AddressScope scope_for(Stack stack, int scope_index);
AddressScope group_scope(const World& world, const Group& g);

// DHCP assignment: the owner always gets the scope's GO address; clients
// draw a uniformly random unused address from the client range.
// Throws ScopeExhausted when all 253 client addresses are taken.
Ipv4Addr assign_address(World& world, GroupId group, NodeId node);

struct RouteEntry {
    InterfaceKind iface;
    AddressScope scope;
    Ipv4Addr own_addr;
};

// Per-node view of its live attachments, in host routing order.
struct RoutingTable {
    std::vector<RouteEntry> entries;

    bool has(InterfaceKind k) const;
};

RoutingTable routing_table(const World& world, NodeId node);

// Host interface selection under the weak end system model:
//  - multicast is bound: its interface if live, otherwise no route;
//  - stream/datagram prefer the Wlan attachment whenever its scope
//    contains the destination (Android prioritizes WiFi over WiFi
//    Direct), falling back to a matching P2p attachment.
std::optional<InterfaceKind> route(const RoutingTable& table, Ipv4Addr dest, ChannelKind kind);

// Whether a packet from src can actually reach dst:
//  - a node always reaches itself;
//  - intragroup traffic is allowed (client<->GO directly, client<->client
//    across the GO);
//  - multi-homed senders route per route(); delivery requires the node
//    holding the destination address on the chosen interface's group to
//    be dst itself (duplicate GO addresses break this under stock).
bool reachable(const World& world, NodeId src, NodeId dst, ChannelKind kind);

// The src-side interface and traversed group of a working path, nullopt
// if dst cannot be reached.
struct PathInfo {
    InterfaceKind src_iface;
    GroupId group;
};
std::optional<PathInfo> find_path(const World& world, NodeId src, NodeId dst, ChannelKind kind);

// True when src->dst traffic within one group crosses the GO (both are
// clients of the same group). Such traffic costs two link traversals.
bool via_go_relay(const World& world, GroupId group, NodeId src, NodeId dst);

} // namespace wdsim

#endif
