#include "wdsim/addressing.hpp"

#include <algorithm>
#include <set>

#include "wdsim/rng.hpp"

namespace wdsim {

AddressScope scope_for(Stack stack, int scope_index) {
    const uint8_t third = stack == Stack::Stock ? uint8_t(49) : uint8_t(49 + scope_index);
    AddressScope s;
    s.go_address = Ipv4Addr::of(192, 168, third, 1);
    s.range_lo = Ipv4Addr::of(192, 168, third, 2);
    s.range_hi = Ipv4Addr::of(192, 168, third, 254);
    return s;
}

AddressScope group_scope(const World& world, const Group& g) {
    return scope_for(world.stack(), g.scope_index);
}

Ipv4Addr assign_address(World& world, GroupId group_id, NodeId node_id) {
    Group& g = world.group(group_id);
    const AddressScope scope = group_scope(world, g);

    if (g.owner == node_id) return scope.go_address;
    if (!g.has_member(node_id)) {
        throw SimError(ErrorCode::InvalidArgument,
                       "node is neither the owner nor a member of group " + g.ssid);
    }

    std::set<uint32_t> used;
    for (const auto& [member, role] : g.members) {
        const NodeState& st = world.node(member);
        const InterfaceKind k = role == Role::Lc ? InterfaceKind::Wlan : InterfaceKind::P2p;
        if (st.attachment(k) && st.attachment(k)->group == group_id) {
            used.insert(st.attachment(k)->addr.as_u32());
        }
    }
    if (int(used.size()) >= scope.capacity()) {
        throw SimError(ErrorCode::ScopeExhausted,
                       "client address range exhausted for group " + g.ssid);
    }

    Prng g_rng(derive_key({world.seed(), kStreamAddress, g.id.value, node_id.value}));
    const uint32_t lo = scope.range_lo.as_u32();
    const uint32_t n = uint32_t(scope.capacity());
    for (;;) {
        const uint32_t candidate = lo + uint32_t(g_rng.below(n));
        if (!used.count(candidate)) {
            return Ipv4Addr::of(uint8_t(candidate >> 24), uint8_t(candidate >> 16),
                                uint8_t(candidate >> 8), uint8_t(candidate));
        }
    }
}

bool RoutingTable::has(InterfaceKind k) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const RouteEntry& e) { return e.iface == k; });
}

RoutingTable routing_table(const World& world, NodeId node_id) {
    const NodeState& st = world.node(node_id);
    RoutingTable t;
    // Wlan first: the host prefers the standard WiFi link.
    if (st.wlan) {
        t.entries.push_back({InterfaceKind::Wlan,
                             group_scope(world, world.group(st.wlan->group)), st.wlan->addr});
    }
    if (st.p2p) {
        t.entries.push_back({InterfaceKind::P2p,
                             group_scope(world, world.group(st.p2p->group)), st.p2p->addr});
    }
    return t;
}

std::optional<InterfaceKind> route(const RoutingTable& table, Ipv4Addr dest, ChannelKind kind) {
    if (kind.is_multicast()) {
        if (table.has(kind.bound)) return kind.bound;
        return std::nullopt;
    }
    // Weak end system model: destination address decides, Wlan wins when
    // both scopes contain it (the stock overlapping-subnet case).
    for (const auto& e : table.entries) {
        if (e.iface == InterfaceKind::Wlan && e.scope.contains(dest)) return InterfaceKind::Wlan;
    }
    for (const auto& e : table.entries) {
        if (e.iface == InterfaceKind::P2p && e.scope.contains(dest)) return InterfaceKind::P2p;
    }
    return std::nullopt;
}

namespace {

// The node of `group` holding `addr`, if any.
std::optional<NodeId> holder_of(const World& world, const Group& g, Ipv4Addr addr) {
    const NodeState& owner = world.node(g.owner);
    if (owner.p2p && owner.p2p->group == g.id && owner.p2p->addr == addr) return g.owner;
    for (const auto& [member, role] : g.members) {
        const NodeState& st = world.node(member);
        const InterfaceKind k = role == Role::Lc ? InterfaceKind::Wlan : InterfaceKind::P2p;
        if (st.attachment(k) && st.attachment(k)->group == g.id &&
            st.attachment(k)->addr == addr) {
            return member;
        }
    }
    return std::nullopt;
}

// Unicast delivery check for one candidate destination address; returns
// the src interface used when delivery succeeds.
std::optional<PathInfo> unicast_path_via(const World& world, NodeId src, NodeId dst,
                                         Ipv4Addr dst_addr, ChannelKind kind) {
    const auto table = routing_table(world, src);
    const auto iface = route(table, dst_addr, kind);
    if (!iface) return std::nullopt;
    const auto& att = world.node(src).attachment(*iface);
    if (!att) return std::nullopt;
    const Group& g = world.group(att->group);
    const auto holder = holder_of(world, g, dst_addr);
    if (holder && *holder == dst) return PathInfo{*iface, g.id};
    return std::nullopt;
}

} // namespace

std::optional<PathInfo> find_path(const World& world, NodeId src, NodeId dst, ChannelKind kind) {
    const NodeState& s = world.node(src);
    const NodeState& d = world.node(dst);

    if (kind.is_multicast()) {
        // Bound socket: transmit on that interface's group, heard by every
        // participant regardless of the other attachment's state.
        const auto& att = s.attachment(kind.bound);
        if (!att) return std::nullopt;
        const Group& g = world.group(att->group);
        if (g.owner == dst || g.has_member(dst)) return PathInfo{kind.bound, g.id};
        return std::nullopt;
    }

    for (const auto* att : {&d.wlan, &d.p2p}) {
        if (!*att) continue;
        if (auto p = unicast_path_via(world, src, dst, (*att)->addr, kind)) return p;
    }
    return std::nullopt;
}

bool reachable(const World& world, NodeId src, NodeId dst, ChannelKind kind) {
    if (src == dst) return true;
    return find_path(world, src, dst, kind).has_value();
}

bool via_go_relay(const World& world, GroupId group_id, NodeId src, NodeId dst) {
    const Group& g = world.group(group_id);
    return g.owner != src && g.owner != dst && g.has_member(src) && g.has_member(dst);
}

} // namespace wdsim
