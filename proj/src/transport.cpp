#include "wdsim/transport.hpp"

#include "wdsim/rng.hpp"

namespace wdsim {

bool LossKey::chunk_delivered(double p, int64_t chunk_index) const {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return unit_double(derive_key({run_seed, kStreamLoss, leg, uint64_t(chunk_index)})) < p;
}

DeliveryResult send(const World& world, const CostParams& params, NodeId src, NodeId dst,
                    ChannelKind kind, Payload payload, Direction measured, LossKey loss) {
    const auto path = src == dst ? std::optional<PathInfo>{} : find_path(world, src, dst, kind);
    if (src != dst && !path) {
        throw SimError(ErrorCode::NoRoute,
                       "no route from " + world.node(src).name + " to " + world.node(dst).name);
    }
    if (kind.is_multicast() || kind.tag == ChannelKind::Tag::Datagram) {
        if (payload.chunk_size_bytes <= 0) {
            throw SimError(ErrorCode::InvalidArgument, "chunk size must be positive");
        }
    }
    if (src == dst) return {payload.size_bytes, 0.0, 0.0}; // loopback
    if (payload.size_bytes == 0) return {};

    // Link parameters follow the measured endpoint's attachment mode in the
    // traversed group: an LC radio behaves as standard WiFi even when the
    // far end is a WiFi Direct node.
    const NodeId measured_node = measured == Direction::Tx ? src : dst;
    const Role measured_role = world.node(measured_node).role_in(path->group);
    const InterfaceKind link_if =
        measured_role == Role::Lc ? InterfaceKind::Wlan : InterfaceKind::P2p;
    const LinkParams& link = params.link(link_if);
    const int hops = via_go_relay(world, path->group, src, dst) ? 2 : 1;

    if (kind.tag == ChannelKind::Tag::Stream) {
        // Reliable: every byte arrives; retransmissions are folded into the
        // effective throughput.
        const CostSample c = transfer_cost(payload.size_bytes, link, kind, measured);
        return {payload.size_bytes, c.duration_s * hops, c.energy_j};
    }

    // Best-effort: per-chunk independent delivery, no retransmission. The
    // sender transmits every chunk; loss happens at the receiver.
    int64_t delivered = 0;
    const double p = link.p_deliver;
    for (int64_t i = 0; i < payload.chunk_count(); ++i) {
        if (loss.chunk_delivered(p, i)) delivered += payload.chunk_bytes(i);
    }
    const CostSample c = transfer_cost(payload.size_bytes, link, kind, measured);
    return {delivered, c.duration_s * hops, c.energy_j};
}

std::vector<std::pair<NodeId, DeliveryResult>> broadcast_in_group(
    const World& world, const CostParams& params, NodeId src, GroupId group_id,
    ChannelKind kind, Payload payload, LossKey loss) {
    if (kind.tag == ChannelKind::Tag::Stream) {
        throw SimError(ErrorCode::InvalidArgument, "broadcast requires a chunked channel");
    }
    if (payload.size_bytes > 0 && payload.chunk_size_bytes <= 0) {
        throw SimError(ErrorCode::InvalidArgument, "chunk size must be positive");
    }
    const Group& g = world.group(group_id);
    if (g.owner != src && !g.has_member(src)) {
        throw SimError(ErrorCode::PreconditionViolated, "sender is not in the group");
    }

    std::vector<NodeId> targets;
    if (g.owner != src) targets.push_back(g.owner);
    for (const auto& [member, role] : g.members) {
        if (member != src) targets.push_back(member);
    }

    std::vector<std::pair<NodeId, DeliveryResult>> results;
    results.reserve(targets.size());
    uint64_t member_idx = 0;
    for (NodeId target : targets) {
        // One hop to the GO (or from the GO); everyone else hears the GO's
        // relay of a client transmission, two hops out.
        const bool src_is_owner = g.owner == src;
        const int hops = (src_is_owner || target == g.owner) ? 1 : 2;
        const InterfaceKind iface =
            g.member_role(target) == Role::Lc ? InterfaceKind::Wlan : InterfaceKind::P2p;
        const LinkParams& link = params.link(iface);

        int64_t delivered = 0;
        if (payload.size_bytes > 0) {
            LossKey member_loss{loss.run_seed, combine(loss.leg, member_idx)};
            for (int64_t i = 0; i < payload.chunk_count(); ++i) {
                if (member_loss.chunk_delivered(link.p_deliver, i)) {
                    delivered += payload.chunk_bytes(i);
                }
            }
        }
        const CostSample c = transfer_cost(payload.size_bytes, link, kind, Direction::Rx);
        results.emplace_back(target, DeliveryResult{delivered, c.duration_s * hops, c.energy_j});
        ++member_idx;
    }
    return results;
}

} // namespace wdsim
