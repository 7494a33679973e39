#ifndef WDSIM_TRANSPORT_HPP
#define WDSIM_TRANSPORT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "wdsim/addressing.hpp"
#include "wdsim/costmodel.hpp"
#include "wdsim/topology.hpp"

namespace wdsim {

struct DeliveryResult {
    int64_t bytes_delivered = 0;
    double duration_s = 0.0;
    double energy_j = 0.0; // at the measured endpoint
};

// Loss stream identifiers so that chunk draws are stable per (run, leg).
struct LossKey {
    uint64_t run_seed = 0;
    uint64_t leg = 0;

    bool chunk_delivered(double p, int64_t chunk_index) const;
};

// One point-to-point transfer.
//  - Stream delivers every byte (retransmission folded into throughput).
//  - Datagram/Multicast deliver each chunk independently with the link's
//    p_deliver; multicast additionally pays the encapsulation penalty.
//  - `measured` picks whose radio the returned energy belongs to (Tx =
//    src side, Rx = dst side); durations double when the path crosses
//    the GO (client-to-client traffic).
// Throws NoRoute when dst is not reachable, InvalidArgument on a zero
// chunk size for chunked kinds.
DeliveryResult send(const World& world, const CostParams& params, NodeId src, NodeId dst,
                    ChannelKind kind, Payload payload, Direction measured, LossKey loss);

// One lossy delivery per other member of the group. When src is a client,
// the GO relays: the GO hears the transmission in one hop, everyone else
// in two. Per-member energy is receive-side.
std::vector<std::pair<NodeId, DeliveryResult>> broadcast_in_group(
    const World& world, const CostParams& params, NodeId src, GroupId group,
    ChannelKind kind, Payload payload, LossKey loss);

} // namespace wdsim

#endif
