#include "wdsim/gateway.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wdsim/engine.hpp"
#include "wdsim/rng.hpp"

namespace wdsim {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::TimeSharing: return "time_sharing";
        case Strategy::UdpMulticast: return "udp_multicast";
        case Strategy::Hybrid: return "hybrid";
        case Strategy::NonStock: return "non_stock";
        case Strategy::RelayAssisted: return "relay_assisted";
    }
    return "?";
}

std::optional<Strategy> strategy_from_string(const std::string& s) {
    if (s == "time_sharing") return Strategy::TimeSharing;
    if (s == "udp_multicast") return Strategy::UdpMulticast;
    if (s == "hybrid") return Strategy::Hybrid;
    if (s == "non_stock") return Strategy::NonStock;
    if (s == "relay_assisted") return Strategy::RelayAssisted;
    return std::nullopt;
}

const char* to_string(TraceToken t) {
    switch (t) {
        case TraceToken::CtrlSendRequest: return "SendRequest";
        case TraceToken::CtrlReady: return "Ready";
        case TraceToken::CtrlReconfiguring: return "Reconfiguring";
        case TraceToken::Attach: return "Attach";
        case TraceToken::Rx: return "Rx";
        case TraceToken::Disconnect: return "Disconnect";
        case TraceToken::Scan: return "Scan";
        case TraceToken::Reconfigure: return "Reconfigure";
        case TraceToken::Tx: return "Tx";
        case TraceToken::RelayHop: return "RelayHop";
        case TraceToken::Broadcast: return "Broadcast";
    }
    return "?";
}

double TransferReport::sum_duration(PhaseKind k) const {
    double t = 0.0;
    for (const auto& p : phases) {
        if (p.name == k) t += p.duration_s;
    }
    return t;
}

double TransferReport::sum_energy(PhaseKind k) const {
    double t = 0.0;
    for (const auto& p : phases) {
        if (p.name == k) t += p.energy_j;
    }
    return t;
}

double TransferReport::sum_duration_tag(PhaseTag tag) const {
    double t = 0.0;
    for (const auto& p : phases) {
        if (p.tag == tag) t += p.duration_s;
    }
    return t;
}

double TransferReport::sum_energy_tag(PhaseTag tag) const {
    double t = 0.0;
    for (const auto& p : phases) {
        if (p.tag == tag) t += p.energy_j;
    }
    return t;
}

namespace {

InterfaceKind iface_for_role(Role r) {
    return r == Role::Lc ? InterfaceKind::Wlan : InterfaceKind::P2p;
}

PhaseKind connect_phase_for(Role r) {
    switch (r) {
        case Role::Lc: return PhaseKind::ConnectLc;
        case Role::Gm: return PhaseKind::ConnectGm;
        case Role::Go: return PhaseKind::CreateGo;
        default:
            throw SimError(ErrorCode::InvalidArgument, "no connect phase for Detached");
    }
}

void add_member(World& w, GroupId gid, NodeId node, Role role) {
    if (role == Role::Lc) {
        join_as_lc(w, gid, node);
        return;
    }
    Group& g = w.group(gid);
    g.members.emplace_back(node, role);
    w.attach(node, gid, role, assign_address(w, gid, node));
}

// Brings the gateway (and, when it owns the group, the waiting peer) into
// the given group. Group ids are resolved lazily because gateway-owned
// groups only exist once created.
GroupId attach_gateway(ScenarioWorld& sw, char side, Role gw_role, Role peer_role) {
    World& w = sw.world;
    NodeId peer = side == 'A' ? sw.peer_a : sw.peer_b;
    GroupId& gid = side == 'A' ? sw.group_a : sw.group_b;
    if (gw_role == Role::Go) {
        Group& g = w.create_group(sw.gateway, side == 'A' ? "groupA" : "groupB");
        gid = g.id;
        w.attach(sw.gateway, gid, Role::Go, assign_address(w, gid, sw.gateway));
        // The GO cannot send connection requests to an LC; the peer has
        // been scanning and joins as soon as the group exists.
        add_member(w, gid, peer, peer_role);
        w.remember_group(w.group(gid));
    } else {
        add_member(w, gid, sw.gateway, gw_role);
    }
    return gid;
}

// Drives one session as a chain of completion events on the queue.
class SessionDriver {
  public:
    SessionDriver(ScenarioWorld& sw, Strategy strategy, const GatewayConfig& cfg,
                  const Session& session, const CostParams& params, const RunOptions& opts)
        : sw_(sw), session_(session), params_(params) {
        report_.strategy = strategy;
        report_.config = cfg;
        report_.run_index = session.run_index;
        if (opts.probe) {
            queue_.set_observer([this, probe = opts.probe](double t) { probe(sw_.world, t); });
        }
    }

    World& world() { return sw_.world; }
    EventQueue& queue() { return queue_; }
    TransferReport& report() { return report_; }

    CostSample sample(PhaseKind kind, std::optional<Role> peer_role = std::nullopt) {
        return sample_phase(params_, kind, session_.run_seed, occurrence_[kind]++, peer_role);
    }

    void record(const CostSample& c, PhaseTag tag) {
        report_.phases.push_back({c.phase, c.duration_s, c.energy_j, tag});
    }

    void token(TraceToken t) { report_.trace.push_back(t); }

    // Schedules `done` after the sampled duration; `done` typically records
    // the phase and chains the next stage.
    void after(double duration, std::function<void()> done) {
        queue_.schedule(queue_.now() + duration, std::move(done));
    }

    // Control message: fixed-cost exchange over the bound multicast
    // channel. A failed delivery aborts the session after the configured
    // timeout.
    void control(TraceToken t, std::function<void()> done) {
        const uint64_t key =
            derive_key({session_.run_seed, kStreamControl, uint64_t(control_index_++)});
        if (unit_double(mix64(key)) >= params_.control_p_deliver) {
            throw SimError(ErrorCode::ControlTimeout,
                           "control message lost; session aborted after " +
                               std::to_string(params_.control_timeout_s) + " s timeout");
        }
        const CostSample c = sample(PhaseKind::ControlExchange);
        after(c.duration_s, [this, c, t, done = std::move(done)]() {
            record(c, PhaseTag::Control);
            token(t);
            done();
        });
    }

    TransferReport finish() {
        queue_.run_until_idle();
        double t = 0.0, e = 0.0;
        for (const auto& p : report_.phases) {
            t += p.duration_s;
            e += p.energy_j;
        }
        report_.t_total_s = t;
        report_.e_total_j = e;
        return std::move(report_);
    }

    Payload payload() const { return Payload{session_.payload_bytes, session_.chunk_bytes}; }
    const CostParams& params() const { return params_; }
    uint64_t run_seed() const { return session_.run_seed; }

  private:
    ScenarioWorld& sw_;
    Session session_;
    const CostParams& params_;
    EventQueue queue_;
    TransferReport report_;
    std::map<PhaseKind, uint64_t> occurrence_;
    uint64_t control_index_ = 0;
};

void reject_if_invalid(const GatewayConfig& cfg) {
    if (auto why = validate_config(cfg)) {
        throw SimError(ErrorCode::ConfigRejected, *why);
    }
}

} // namespace

ScenarioWorld build_world(Strategy strategy, const GatewayConfig& cfg,
                          const CostParams& params, uint64_t run_seed) {
    (void)params;
    reject_if_invalid(cfg);

    ScenarioWorld sw{World(cfg.stack, run_seed), {}, {}, {}, GroupId{0}, GroupId{0}, {}, {}};
    World& w = sw.world;
    sw.gateway = w.add_node("gateway");
    sw.peer_a = w.add_node("nodeA");
    sw.peer_b = w.add_node("nodeB");

    const bool simultaneous = cfg.mode == AttachMode::Simultaneous;

    auto build_side = [&](char side, Role gw_role, Role peer_role) {
        NodeId peer = side == 'A' ? sw.peer_a : sw.peer_b;
        GroupId& gid = side == 'A' ? sw.group_a : sw.group_b;
        if (gw_role == Role::Go) {
            // Gateway-owned group: exists only while the gateway hosts it.
            if (simultaneous) attach_gateway(sw, side, gw_role, peer_role);
        } else {
            Group& g = w.create_group(peer, side == 'A' ? "groupA" : "groupB");
            gid = g.id;
            w.attach(peer, gid, Role::Go, assign_address(w, gid, peer));
            w.remember_group(g);
            if (simultaneous) add_member(w, gid, sw.gateway, gw_role);
        }
    };

    build_side('A', cfg.role_in_a, cfg.peer_a_role);
    build_side('B', cfg.role_in_b, cfg.peer_b_role);

    if (strategy == Strategy::RelayAssisted) {
        // One designated relay client per group, beside the peer nodes.
        sw.relay_a = w.add_node("relayA");
        sw.relay_b = w.add_node("relayB");
        if (sw.world.has_group(sw.group_a)) add_member(w, sw.group_a, *sw.relay_a, Role::Gm);
        if (sw.world.has_group(sw.group_b)) add_member(w, sw.group_b, *sw.relay_b, Role::Gm);
    }
    return sw;
}

TransferReport run_time_sharing(ScenarioWorld& sw, const GatewayConfig& cfg,
                                const Session& session, const CostParams& params,
                                const RunOptions& opts) {
    reject_if_invalid(cfg);
    if (cfg.mode != AttachMode::TimeSharing) {
        throw SimError(ErrorCode::ConfigRejected, "time sharing requires TimeSharing mode");
    }

    SessionDriver d(sw, Strategy::TimeSharing, cfg, session, params, opts);
    const Payload payload = d.payload();

    // Stage 1: (re)connect to the source group, persistent costs.
    const CostSample attach_a =
        d.sample(connect_phase_for(cfg.role_in_a),
                 cfg.role_in_a == Role::Go ? std::optional<Role>(cfg.peer_a_role) : std::nullopt);
    d.after(attach_a.duration_s, [&d, &sw, &cfg, attach_a, payload]() {
        d.record(attach_a, PhaseTag::Setup);
        d.token(TraceToken::Attach);
        attach_gateway(sw, 'A', cfg.role_in_a, cfg.peer_a_role);

        // Stage 2: receive the full payload over a reliable stream.
        const DeliveryResult rx = send(sw.world, d.params(), sw.peer_a, sw.gateway,
                                       ChannelKind::stream(), payload, Direction::Rx,
                                       LossKey{d.run_seed(), 0});
        d.after(rx.duration_s, [&d, &sw, &cfg, rx, payload]() {
            d.record({PhaseKind::Rx, rx.duration_s, rx.energy_j}, PhaseTag::Relay);
            d.token(TraceToken::Rx);

            // Stage 3: leave the source group.
            const CostSample disc = d.sample(PhaseKind::Disconnect);
            d.after(disc.duration_s, [&d, &sw, &cfg, disc, payload]() {
                d.record(disc, PhaseTag::Teardown);
                d.token(TraceToken::Disconnect);
                sw.world.detach(sw.gateway, iface_for_role(cfg.role_in_a));

                // Stage 4: scan for the (known, persistent) second group.
                const CostSample scan = d.sample(PhaseKind::Scan);
                d.after(scan.duration_s, [&d, &sw, &cfg, scan, payload]() {
                    d.record(scan, PhaseTag::Discovery);
                    d.token(TraceToken::Scan);

                    // Stage 5: connect to the second group per role. Coming
                    // from a plain-WiFi attachment, the WiFi Direct services
                    // must be started first.
                    if (needs_p2p_service_init(cfg.role_in_a, cfg.role_in_b)) {
                        d.record(d.sample(PhaseKind::P2pServiceInit), PhaseTag::Switch);
                    }
                    const CostSample attach_b =
                        d.sample(connect_phase_for(cfg.role_in_b),
                                 cfg.role_in_b == Role::Go ? std::optional<Role>(cfg.peer_b_role)
                                                           : std::nullopt);
                    d.after(attach_b.duration_s, [&d, &sw, &cfg, attach_b, payload]() {
                        d.record(attach_b, PhaseTag::Switch);
                        d.token(TraceToken::Attach);
                        attach_gateway(sw, 'B', cfg.role_in_b, cfg.peer_b_role);

                        // Stage 6: forward everything to the destination.
                        const DeliveryResult tx = send(sw.world, d.params(), sw.gateway,
                                                       sw.peer_b, ChannelKind::stream(), payload,
                                                       Direction::Tx, LossKey{d.run_seed(), 1});
                        d.after(tx.duration_s, [&d, tx]() {
                            d.record({PhaseKind::Tx, tx.duration_s, tx.energy_j}, PhaseTag::Relay);
                            d.token(TraceToken::Tx);
                            d.report().bytes_delivered = tx.bytes_delivered;
                        });
                    });
                });
            });
        });
    });

    return d.finish();
}

TransferReport run_udp_multicast(ScenarioWorld& sw, const GatewayConfig& cfg,
                                 const Session& session, const CostParams& params,
                                 const RunOptions& opts) {
    reject_if_invalid(cfg);
    if (cfg.mode != AttachMode::Simultaneous) {
        throw SimError(ErrorCode::ConfigRejected, "udp multicast requires simultaneous mode");
    }
    if (!((cfg.role_in_a == Role::Lc && cfg.role_in_b == Role::Gm) ||
          (cfg.role_in_a == Role::Gm && cfg.role_in_b == Role::Lc))) {
        throw SimError(ErrorCode::ConfigRejected,
                       "udp multicast requires one LC and one GM attachment");
    }

    SessionDriver d(sw, Strategy::UdpMulticast, cfg, session, params, opts);
    const Payload payload = d.payload();
    if (payload.size_bytes > 0 && payload.chunk_size_bytes <= 0) {
        throw SimError(ErrorCode::InvalidArgument, "chunk size must be positive");
    }

    const InterfaceKind rx_if = iface_for_role(cfg.role_in_a);
    const InterfaceKind tx_if = iface_for_role(cfg.role_in_b);
    const LinkParams& rx_link = params.link(rx_if);
    const LinkParams& tx_link = params.link(tx_if);

    // Chunks are forwarded as they arrive, so the two bound sockets
    // operate concurrently. We simulate the per-chunk store-and-forward
    // pipeline to get the wall-clock completion, then tile the report into
    // an Rx phase (pre-forwarding and stall time) and a Tx phase whose
    // duration is the pure forwarding time of the relayed bytes.
    const LossKey rx_loss{session.run_seed, 0};
    const LossKey tx_loss{session.run_seed, 1};
    const double rx_penalty = rx_link.multicast_penalty;
    const double tx_penalty = tx_link.multicast_penalty;

    int64_t forwarded_bytes = 0;
    int64_t delivered_bytes = 0;
    double rx_clock = 0.0;
    double tx_free = 0.0;
    for (int64_t i = 0; i < payload.chunk_count(); ++i) {
        const int64_t bytes = payload.chunk_bytes(i);
        rx_clock += double(bytes) * 8.0 / (rx_link.throughput_bps * rx_penalty);
        if (!rx_loss.chunk_delivered(rx_link.p_deliver, i)) continue;
        forwarded_bytes += bytes;
        const double tx_time = double(bytes) * 8.0 / (tx_link.throughput_bps * tx_penalty);
        tx_free = std::max(tx_free, rx_clock) + tx_time;
        if (tx_loss.chunk_delivered(tx_link.p_deliver, i)) delivered_bytes += bytes;
    }
    const double session_end = std::max(rx_clock, tx_free);

    const CostSample rx_cost =
        transfer_cost(payload.size_bytes, rx_link, ChannelKind::multicast(rx_if), Direction::Rx);
    const CostSample tx_cost =
        transfer_cost(forwarded_bytes, tx_link, ChannelKind::multicast(tx_if), Direction::Tx);

    // Phase durations tile the wall clock; each phase's energy covers that
    // radio's full activity even where the two overlap.
    const double tx_phase_s = tx_cost.duration_s;
    const double rx_phase_s = std::max(0.0, session_end - tx_phase_s);

    d.after(rx_phase_s, [&d, rx_phase_s, rx_cost]() {
        d.record({PhaseKind::Rx, rx_phase_s, rx_cost.energy_j}, PhaseTag::Relay);
        d.token(TraceToken::Rx);
    });
    d.after(session_end, [&d, tx_phase_s, tx_cost, delivered_bytes]() {
        d.record({PhaseKind::Tx, tx_phase_s, tx_cost.energy_j}, PhaseTag::Relay);
        d.token(TraceToken::Tx);
        d.report().bytes_delivered = delivered_bytes;
    });

    return d.finish();
}

TransferReport run_hybrid(ScenarioWorld& sw, const GatewayConfig& cfg, const Session& session,
                          const CostParams& params, const RunOptions& opts) {
    reject_if_invalid(cfg);
    if (cfg.mode != AttachMode::Simultaneous || cfg.stack != Stack::Stock) {
        throw SimError(ErrorCode::ConfigRejected,
                       "the hybrid protocol targets stock simultaneous operation");
    }
    if (!((cfg.role_in_a == Role::Lc && cfg.role_in_b == Role::Gm) ||
          (cfg.role_in_a == Role::Gm && cfg.role_in_b == Role::Lc))) {
        throw SimError(ErrorCode::ConfigRejected,
                       "the hybrid protocol requires one LC and one GM attachment");
    }

    SessionDriver d(sw, Strategy::Hybrid, cfg, session, params, opts);

    auto relay_over_wlan = [&d, &sw]() {
        // Receive over the LC link (the only link unicast can use while
        // both are live), drop it, then forward over the now-sole WiFi
        // Direct link with a TCP stream.
        const Payload payload = d.payload();
        const DeliveryResult rx =
            send(sw.world, d.params(), sw.peer_a, sw.gateway, ChannelKind::stream(), payload,
                 Direction::Rx, LossKey{d.run_seed(), 0});
        d.after(rx.duration_s, [&d, &sw, rx, payload]() {
            d.record({PhaseKind::Rx, rx.duration_s, rx.energy_j}, PhaseTag::Relay);
            d.token(TraceToken::Rx);

            const CostSample disc = d.sample(PhaseKind::Disconnect);
            d.after(disc.duration_s, [&d, &sw, disc, payload]() {
                d.record(disc, PhaseTag::Teardown);
                d.token(TraceToken::Disconnect);
                sw.world.detach(sw.gateway, InterfaceKind::Wlan);

                const DeliveryResult tx =
                    send(sw.world, d.params(), sw.gateway, sw.peer_b, ChannelKind::stream(),
                         payload, Direction::Tx, LossKey{d.run_seed(), 1});
                d.after(tx.duration_s, [&d, tx]() {
                    d.record({PhaseKind::Tx, tx.duration_s, tx.energy_j}, PhaseTag::Relay);
                    d.token(TraceToken::Tx);
                    d.report().bytes_delivered = tx.bytes_delivered;
                });
            });
        });
    };

    // The source group signals over the control channel.
    d.control(TraceToken::CtrlSendRequest, [&d, &sw, &cfg, relay_over_wlan]() {
        if (cfg.role_in_a == Role::Lc) {
            // Allowed to receive over the LC link: acknowledge and go.
            d.control(TraceToken::CtrlReady, relay_over_wlan);
            return;
        }
        // Attached to the source as a GM: unicast reception over WiFi
        // Direct is not possible, so announce a reconfiguration, detach
        // from both groups and come back with the roles swapped.
        d.control(TraceToken::CtrlReconfiguring, [&d, &sw, relay_over_wlan]() {
            CostSample reconf{PhaseKind::Reconfigure, 0.0, 0.0};
            for (const CostSample part :
                 {d.sample(PhaseKind::Disconnect), d.sample(PhaseKind::Disconnect),
                  d.sample(PhaseKind::ConnectLc), d.sample(PhaseKind::ConnectGm)}) {
                reconf.duration_s += part.duration_s;
                reconf.energy_j += part.energy_j;
            }
            // No WiFi Direct service restart: the device held a P2P role
            // throughout, the services never stopped.
            d.after(reconf.duration_s, [&d, &sw, reconf, relay_over_wlan]() {
                d.record(reconf, PhaseTag::Switch);
                d.report().reconfig_count += 1;
                World& w = sw.world;
                w.detach(sw.gateway, InterfaceKind::P2p);
                w.detach(sw.gateway, InterfaceKind::Wlan);
                add_member(w, sw.group_a, sw.gateway, Role::Lc);
                add_member(w, sw.group_b, sw.gateway, Role::Gm);
                d.control(TraceToken::CtrlReady, relay_over_wlan);
            });
        });
    });

    return d.finish();
}

TransferReport run_non_stock(ScenarioWorld& sw, const GatewayConfig& cfg, const Session& session,
                             const CostParams& params, const RunOptions& opts) {
    reject_if_invalid(cfg);
    if (cfg.stack != Stack::NonStock || cfg.mode != AttachMode::Simultaneous) {
        throw SimError(ErrorCode::ConfigRejected,
                       "this strategy requires the non-stock stack with simultaneous attachments");
    }

    SessionDriver d(sw, Strategy::NonStock, cfg, session, params, opts);
    const Payload payload = d.payload();

    // Unique GO addresses give disjoint scopes, so plain unicast streams
    // work on both links; the session is receive then forward, nothing
    // else.
    const DeliveryResult rx = send(sw.world, params, sw.peer_a, sw.gateway, ChannelKind::stream(),
                                   payload, Direction::Rx, LossKey{session.run_seed, 0});
    d.after(rx.duration_s, [&d, &sw, rx, payload]() {
        d.record({PhaseKind::Rx, rx.duration_s, rx.energy_j}, PhaseTag::Relay);
        d.token(TraceToken::Rx);
        const DeliveryResult tx =
            send(sw.world, d.params(), sw.gateway, sw.peer_b, ChannelKind::stream(), payload,
                 Direction::Tx, LossKey{d.run_seed(), 1});
        d.after(tx.duration_s, [&d, tx]() {
            d.record({PhaseKind::Tx, tx.duration_s, tx.energy_j}, PhaseTag::Relay);
            d.token(TraceToken::Tx);
            d.report().bytes_delivered = tx.bytes_delivered;
        });
    });

    return d.finish();
}

TransferReport run_relay_assisted(ScenarioWorld& sw, const GatewayConfig& cfg,
                                  const Session& session, const CostParams& params,
                                  const RunOptions& opts) {
    reject_if_invalid(cfg);
    if (cfg.mode != AttachMode::Simultaneous || cfg.role_in_a != Role::Lc ||
        cfg.role_in_b != Role::Go) {
        throw SimError(ErrorCode::ConfigRejected,
                       "relay-assisted operation needs the gateway as LC in the source group "
                       "and GO of the destination group");
    }
    if (!sw.relay_a || !sw.relay_b) {
        throw SimError(ErrorCode::PreconditionViolated,
                       "relay-assisted operation requires a designated relay node in every group");
    }

    SessionDriver d(sw, Strategy::RelayAssisted, cfg, session, params, opts);
    const Payload payload = d.payload();

    // Hop 1 happens upstream: the source GO forwards to its relay client,
    // which alone can talk to the gateway despite the duplicated GO
    // address. Only the gateway's own phases enter the ledger.
    d.token(TraceToken::RelayHop);

    // Hop 2: relay -> gateway over the LC link (client-to-client, so the
    // traffic crosses the source GO).
    const DeliveryResult rx = send(sw.world, params, *sw.relay_a, sw.gateway,
                                   ChannelKind::stream(), payload, Direction::Rx,
                                   LossKey{session.run_seed, 0});
    d.after(rx.duration_s, [&d, &sw, rx, payload]() {
        d.token(TraceToken::RelayHop);
        d.record({PhaseKind::Rx, rx.duration_s, rx.energy_j}, PhaseTag::Relay);
        d.token(TraceToken::Rx);

        // Hop 3: UDP broadcast into the owned group; no retransmissions.
        const auto results = broadcast_in_group(sw.world, d.params(), sw.gateway, sw.group_b,
                                                ChannelKind::datagram(), payload,
                                                LossKey{d.run_seed(), 1});
        const CostSample tx_cost =
            transfer_cost(payload.size_bytes, d.params().link(InterfaceKind::P2p),
                          ChannelKind::datagram(), Direction::Tx);
        int64_t to_peer = 0;
        for (const auto& [node, res] : results) {
            if (node == sw.peer_b) to_peer = res.bytes_delivered;
        }
        d.after(tx_cost.duration_s, [&d, tx_cost, to_peer]() {
            d.record({PhaseKind::Tx, tx_cost.duration_s, tx_cost.energy_j}, PhaseTag::Relay);
            d.token(TraceToken::Broadcast);
            d.token(TraceToken::Tx);
            d.report().bytes_delivered = to_peer;
        });
    });

    return d.finish();
}

GatewayConfig choose_hybrid_gateway(const GatewayConfig& primary, bool second_gateway) {
    if (!second_gateway || primary.role_in_a == Role::Lc) return primary;
    GatewayConfig alt = primary;
    std::swap(alt.role_in_a, alt.role_in_b);
    std::swap(alt.peer_a_role, alt.peer_b_role);
    return alt;
}

TransferReport run_strategy(Strategy strategy, const GatewayConfig& cfg, const Session& session,
                            const CostParams& params, const RunOptions& opts) {
    GatewayConfig effective = cfg;
    if (strategy == Strategy::Hybrid) {
        effective = choose_hybrid_gateway(cfg, session.second_gateway);
    }
    ScenarioWorld sw = build_world(strategy, effective, params, session.run_seed);
    switch (strategy) {
        case Strategy::TimeSharing: return run_time_sharing(sw, effective, session, params, opts);
        case Strategy::UdpMulticast:
            return run_udp_multicast(sw, effective, session, params, opts);
        case Strategy::Hybrid: return run_hybrid(sw, effective, session, params, opts);
        case Strategy::NonStock: return run_non_stock(sw, effective, session, params, opts);
        case Strategy::RelayAssisted:
            return run_relay_assisted(sw, effective, session, params, opts);
    }
    throw SimError(ErrorCode::InvalidArgument, "unknown strategy");
}

} // namespace wdsim
