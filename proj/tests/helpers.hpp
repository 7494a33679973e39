#ifndef WDSIM_TESTS_HELPERS_HPP
#define WDSIM_TESTS_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "wdsim/gateway.hpp"
#include "wdsim/rng.hpp"

namespace wdsim::test {

inline GatewayConfig ts_config(Role a, Role b, Role peer_a = Role::Detached,
                               Role peer_b = Role::Detached) {
    GatewayConfig cfg;
    cfg.role_in_a = a;
    cfg.role_in_b = b;
    cfg.peer_a_role = peer_a != Role::Detached ? peer_a : (a == Role::Go ? Role::Gm : Role::Go);
    cfg.peer_b_role = peer_b != Role::Detached ? peer_b : (b == Role::Go ? Role::Gm : Role::Go);
    cfg.mode = AttachMode::TimeSharing;
    cfg.stack = Stack::Stock;
    return cfg;
}

inline GatewayConfig sim_config(Role a, Role b, Stack stack = Stack::Stock) {
    GatewayConfig cfg = ts_config(a, b);
    cfg.mode = AttachMode::Simultaneous;
    cfg.stack = stack;
    return cfg;
}

// Independent re-derivation of the documented per-chunk delivery draw;
// kept apart from the transport implementation on purpose.
inline bool oracle_chunk_delivered(uint64_t run_seed, uint64_t leg, int64_t chunk, double p) {
    const uint64_t key = derive_key({run_seed, kStreamLoss, leg, uint64_t(chunk)});
    return unit_double(key) < p;
}

struct OracleDelivery {
    int64_t chunks = 0;
    int64_t bytes = 0;
};

inline OracleDelivery oracle_lossy_delivery(uint64_t run_seed, uint64_t leg, Payload payload,
                                            double p) {
    OracleDelivery d;
    for (int64_t i = 0; i < payload.chunk_count(); ++i) {
        if (oracle_chunk_delivered(run_seed, leg, i, p)) {
            ++d.chunks;
            d.bytes += payload.chunk_bytes(i);
        }
    }
    return d;
}

// Matches the control/relay shape of one hybrid session:
//   SendRequest (Ready | Reconfiguring Ready) Rx Disconnect+ Tx
inline bool matches_hybrid_trace(const std::vector<TraceToken>& trace) {
    size_t i = 0;
    auto take = [&](TraceToken t) {
        if (i < trace.size() && trace[i] == t) {
            ++i;
            return true;
        }
        return false;
    };
    if (!take(TraceToken::CtrlSendRequest)) return false;
    if (take(TraceToken::CtrlReconfiguring)) {
        if (!take(TraceToken::CtrlReady)) return false;
    } else if (!take(TraceToken::CtrlReady)) {
        return false;
    }
    if (!take(TraceToken::Rx)) return false;
    if (!take(TraceToken::Disconnect)) return false;
    while (take(TraceToken::Disconnect)) {
    }
    if (!take(TraceToken::Tx)) return false;
    return i == trace.size();
}

inline std::vector<PhaseKind> phase_names(const TransferReport& r) {
    std::vector<PhaseKind> names;
    names.reserve(r.phases.size());
    for (const auto& p : r.phases) names.push_back(p.name);
    return names;
}

inline int count_phase(const TransferReport& r, PhaseKind k) {
    int n = 0;
    for (const auto& p : r.phases) n += p.name == k;
    return n;
}

} // namespace wdsim::test

#endif
