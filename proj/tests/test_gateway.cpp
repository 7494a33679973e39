#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "helpers.hpp"
#include "wdsim/engine.hpp"
#include "wdsim/gateway.hpp"

using namespace wdsim;
using test::count_phase;
using test::phase_names;
using test::sim_config;
using test::ts_config;

namespace {

const CostParams kParams = CostParams::defaults();

Session session_with_seed(uint64_t seed, int64_t payload = 10'000'000) {
    Session s;
    s.payload_bytes = payload;
    s.run_seed = seed;
    return s;
}

TransferReport run(Strategy strategy, const GatewayConfig& cfg, uint64_t seed,
                   const CostParams& params = kParams, bool second_gateway = false) {
    Session s = session_with_seed(seed);
    s.second_gateway = second_gateway;
    return run_strategy(strategy, cfg, s, params);
}

} // namespace

TEST_CASE("time sharing emits the canonical phase sequence") {
    const auto r = run(Strategy::TimeSharing, ts_config(Role::Gm, Role::Lc), 3);
    CHECK(phase_names(r) == std::vector<PhaseKind>{PhaseKind::ConnectGm, PhaseKind::Rx,
                                                   PhaseKind::Disconnect, PhaseKind::Scan,
                                                   PhaseKind::ConnectLc, PhaseKind::Tx});
    CHECK(r.bytes_delivered == 10'000'000);
    CHECK(r.reconfig_count == 0);
    CHECK(r.t_rx_s() == 4.0);
    CHECK(r.t_tx_s() == 4.0);
    // Switch metrics cover the second connection only.
    CHECK(r.t_switch_s() == r.phases[4].duration_s);
}

TEST_CASE("the WiFi Direct services restart exactly on LC-to-P2P switches") {
    const auto with = run(Strategy::TimeSharing, ts_config(Role::Lc, Role::Gm), 3);
    CHECK(count_phase(with, PhaseKind::P2pServiceInit) == 1);
    CHECK(with.e_switch_j() == doctest::Approx(with.phases[5].energy_j + 2.0));

    for (auto cfg : {ts_config(Role::Gm, Role::Gm), ts_config(Role::Gm, Role::Lc),
                     ts_config(Role::Go, Role::Gm), ts_config(Role::Lc, Role::Lc)}) {
        CHECK(count_phase(run(Strategy::TimeSharing, cfg, 3), PhaseKind::P2pServiceInit) == 0);
    }
    CHECK(count_phase(run(Strategy::TimeSharing, ts_config(Role::Lc, Role::Go), 3),
                      PhaseKind::P2pServiceInit) == 1);
}

TEST_CASE("a gateway becoming GO re-creates the group and the peer joins") {
    const auto r = run(Strategy::TimeSharing, ts_config(Role::Gm, Role::Go, Role::Go, Role::Lc), 5);
    CHECK(count_phase(r, PhaseKind::CreateGo) == 1);
    CHECK(r.bytes_delivered == 10'000'000);

    // Hosting an LC connects faster than hosting a GM, same seed.
    const auto lc_peer =
        run(Strategy::TimeSharing, ts_config(Role::Gm, Role::Go, Role::Go, Role::Lc), 5);
    const auto gm_peer =
        run(Strategy::TimeSharing, ts_config(Role::Gm, Role::Go, Role::Go, Role::Gm), 5);
    CHECK(lc_peer.t_switch_s() < gm_peer.t_switch_s());
    CHECK(gm_peer.t_switch_s() - lc_peer.t_switch_s() == doctest::Approx(0.5));
}

TEST_CASE("time sharing holds at most one attachment at any instant") {
    for (auto cfg : {ts_config(Role::Gm, Role::Lc), ts_config(Role::Lc, Role::Go),
                     ts_config(Role::Go, Role::Gm)}) {
        ScenarioWorld sw = build_world(Strategy::TimeSharing, cfg, kParams, 9);
        RunOptions opts;
        int observed = 0;
        opts.probe = [&](const World& w, double) {
            const NodeState& gw = w.node(sw.gateway);
            CHECK(int(gw.wlan.has_value()) + int(gw.p2p.has_value()) <= 1);
            ++observed;
        };
        run_time_sharing(sw, cfg, session_with_seed(9), kParams, opts);
        CHECK(observed > 0);
    }
}

TEST_CASE("roles never change in place while attached") {
    // Time sharing and udp multicast never rejoin a group mid-session, so
    // every (node, group) role observation must be stable.
    for (Strategy strategy : {Strategy::TimeSharing, Strategy::UdpMulticast}) {
        const GatewayConfig cfg = strategy == Strategy::TimeSharing
                                      ? ts_config(Role::Gm, Role::Lc)
                                      : sim_config(Role::Gm, Role::Lc);
        ScenarioWorld sw = build_world(strategy, cfg, kParams, 41);
        RunOptions opts;
        std::map<std::pair<uint32_t, uint32_t>, Role> seen;
        opts.probe = [&](const World& w, double) {
            for (const auto& [nid, node] : w.nodes()) {
                for (const auto* att : {&node.wlan, &node.p2p}) {
                    if (!*att) continue;
                    const auto key = std::make_pair(nid, (*att)->group.value);
                    auto [it, inserted] = seen.emplace(key, (*att)->role);
                    if (!inserted) CHECK(it->second == (*att)->role);
                }
            }
        };
        const Session s = session_with_seed(41);
        if (strategy == Strategy::TimeSharing) {
            run_time_sharing(sw, cfg, s, kParams, opts);
        } else {
            run_udp_multicast(sw, cfg, s, kParams, opts);
        }
    }

    // The hybrid reconfiguration changes the gateway's role only through a
    // full detach and rejoin; everyone else's role stays put and a live
    // attachment is never rewritten.
    const GatewayConfig cfg = sim_config(Role::Gm, Role::Lc);
    ScenarioWorld sw = build_world(Strategy::Hybrid, cfg, kParams, 41);
    RunOptions opts;
    opts.probe = [&](const World& w, double) {
        CHECK(w.node(sw.peer_a).role_in(sw.group_a) == Role::Go);
        CHECK(w.node(sw.peer_b).role_in(sw.group_b) == Role::Go);
        const NodeState& gw = w.node(sw.gateway);
        int in_a = 0;
        for (const auto* att : {&gw.wlan, &gw.p2p}) {
            if (*att && (*att)->group == sw.group_a) ++in_a;
        }
        CHECK(in_a <= 1); // one membership record at a time
    };
    run_hybrid(sw, cfg, session_with_seed(41), kParams, opts);

    // And attach() refuses to overwrite a live attachment.
    World w(Stack::Stock, 1);
    const NodeId n = w.add_node("n");
    const NodeId owner = w.add_node("o");
    Group& g = w.create_group(owner, "g");
    w.attach(owner, g.id, Role::Go, Ipv4Addr::of(192, 168, 49, 1));
    w.attach(n, g.id, Role::Gm, Ipv4Addr::of(192, 168, 49, 2));
    CHECK_THROWS_AS(w.attach(n, g.id, Role::Go, Ipv4Addr::of(192, 168, 49, 3)), SimError);
    CHECK(w.node(n).role_in(g.id) == Role::Gm);
}

TEST_CASE("hybrid with an LC source role relays without reconfiguring") {
    const auto r = run(Strategy::Hybrid, sim_config(Role::Lc, Role::Gm), 11);
    CHECK(r.reconfig_count == 0);
    CHECK(count_phase(r, PhaseKind::Disconnect) == 1);
    CHECK(count_phase(r, PhaseKind::Reconfigure) == 0);
    CHECK(count_phase(r, PhaseKind::ControlExchange) == 2);
    CHECK(r.bytes_delivered == 10'000'000);
    CHECK(test::matches_hybrid_trace(r.trace));
    CHECK(r.t_total_s == doctest::Approx(8.2));
}

TEST_CASE("hybrid with a GM source role swaps its configuration first") {
    const auto r = run(Strategy::Hybrid, sim_config(Role::Gm, Role::Lc), 11);
    CHECK(r.reconfig_count == 1);
    CHECK(count_phase(r, PhaseKind::Reconfigure) == 1);
    CHECK(count_phase(r, PhaseKind::ControlExchange) == 3);
    CHECK(r.bytes_delivered == 10'000'000);
    CHECK(test::matches_hybrid_trace(r.trace));

    // The extra cost is the reconfiguration plus one control message.
    const auto lc = run(Strategy::Hybrid, sim_config(Role::Lc, Role::Gm), 11);
    double reconfigure_s = 0.0;
    for (const auto& p : r.phases) {
        if (p.name == PhaseKind::Reconfigure) reconfigure_s = p.duration_s;
    }
    CHECK(r.t_total_s - lc.t_total_s == doctest::Approx(reconfigure_s + 0.05));
}

TEST_CASE("hybrid leaves the source detached and the destination attached") {
    const GatewayConfig cfg = sim_config(Role::Lc, Role::Gm);
    ScenarioWorld sw = build_world(Strategy::Hybrid, cfg, kParams, 13);
    run_hybrid(sw, cfg, session_with_seed(13), kParams);
    const NodeState& gw = sw.world.node(sw.gateway);
    CHECK_FALSE(gw.wlan.has_value());
    REQUIRE(gw.p2p.has_value());
    CHECK(gw.p2p->group == sw.group_b);
}

TEST_CASE("a second opposite gateway removes the reconfiguration branch") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        const auto r = run(Strategy::Hybrid, sim_config(Role::Gm, Role::Lc), seed, kParams,
                           /*second_gateway=*/true);
        CHECK(r.reconfig_count == 0);
        CHECK(test::matches_hybrid_trace(r.trace));
    }
    CHECK(choose_hybrid_gateway(sim_config(Role::Gm, Role::Lc), true).role_in_a == Role::Lc);
    CHECK(choose_hybrid_gateway(sim_config(Role::Lc, Role::Gm), true).role_in_a == Role::Lc);
    CHECK(choose_hybrid_gateway(sim_config(Role::Gm, Role::Lc), false).role_in_a == Role::Gm);
}

TEST_CASE("a lost control channel aborts the session with a timeout") {
    CostParams p = kParams;
    p.control_p_deliver = 0.0;
    try {
        run(Strategy::Hybrid, sim_config(Role::Lc, Role::Gm), 1, p);
        FAIL("expected a control timeout");
    } catch (const SimError& e) {
        CHECK(e.code() == ErrorCode::ControlTimeout);
    }
}

TEST_CASE("hybrid trace shapes hold across seeds and orientations") {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        const GatewayConfig cfg =
            seed % 2 == 0 ? sim_config(Role::Lc, Role::Gm) : sim_config(Role::Gm, Role::Lc);
        const auto r = run(Strategy::Hybrid, cfg, seed);
        CHECK(test::matches_hybrid_trace(r.trace));
        CHECK(r.reconfig_count == (cfg.role_in_a == Role::Gm ? 1 : 0));
    }
}

TEST_CASE("udp multicast forwards chunk by chunk with compounded loss") {
    // Default: loss on the WiFi Direct distribution leg only.
    const auto r = run(Strategy::UdpMulticast, sim_config(Role::Lc, Role::Gm), 17);
    CHECK(r.t_tx_s() == 8.0); // exactly twice the stream time at penalty 0.5
    CHECK(r.bytes_delivered < 10'000'000);
    CHECK(r.bytes_delivered > int64_t(10'000'000 * 0.90));
    CHECK(phase_names(r) == std::vector<PhaseKind>{PhaseKind::Rx, PhaseKind::Tx});
    CHECK(r.t_switch_s() == 0.0);

    // Lossless configuration delivers everything.
    CostParams lossless = kParams;
    lossless.p2p.p_deliver = 1.0;
    const auto full = run(Strategy::UdpMulticast, sim_config(Role::Lc, Role::Gm), 17, lossless);
    CHECK(full.bytes_delivered == 10'000'000);

    // Loss on both legs compounds to roughly 0.93^2.
    CostParams both = kParams;
    both.wlan.p_deliver = 0.93;
    double ratio_sum = 0.0;
    for (uint64_t seed = 0; seed < 30; ++seed) {
        const auto rr = run(Strategy::UdpMulticast, sim_config(Role::Lc, Role::Gm), seed, both);
        ratio_sum += double(rr.bytes_delivered) / 10'000'000;
    }
    CHECK(ratio_sum / 30 == doctest::Approx(0.93 * 0.93).epsilon(0.01));
}

TEST_CASE("udp multicast rejects configurations without one LC and one GM") {
    CHECK_THROWS_AS(run(Strategy::UdpMulticast, sim_config(Role::Lc, Role::Go), 1), SimError);
    CHECK_THROWS_AS(run(Strategy::UdpMulticast, ts_config(Role::Lc, Role::Gm), 1), SimError);
}

TEST_CASE("the non-stock build relays with no switching phases at all") {
    const auto r = run(Strategy::NonStock, sim_config(Role::Lc, Role::Gm, Stack::NonStock), 19);
    CHECK(phase_names(r) == std::vector<PhaseKind>{PhaseKind::Rx, PhaseKind::Tx});
    CHECK(r.t_total_s == 8.0);
    CHECK(r.t_switch_s() == 0.0);
    CHECK(r.e_switch_j() == 0.0);
    CHECK(r.bytes_delivered == 10'000'000);

    CHECK_THROWS_AS(run(Strategy::NonStock, sim_config(Role::Lc, Role::Gm, Stack::Stock), 19),
                    SimError);
}

TEST_CASE("the non-stock build lower-bounds the other strategies") {
    const GatewayConfig all_ts[] = {
        ts_config(Role::Gm, Role::Gm), ts_config(Role::Gm, Role::Lc),
        ts_config(Role::Lc, Role::Gm), ts_config(Role::Lc, Role::Lc),
        ts_config(Role::Go, Role::Gm), ts_config(Role::Gm, Role::Go),
        ts_config(Role::Go, Role::Lc), ts_config(Role::Lc, Role::Go),
    };
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const auto ns = run(Strategy::NonStock, sim_config(Role::Lc, Role::Gm, Stack::NonStock),
                            seed);
        CHECK(ns.t_total_s <=
              run(Strategy::Hybrid, sim_config(Role::Lc, Role::Gm), seed).t_total_s);
        for (const auto& cfg : all_ts) {
            CHECK(ns.t_total_s < run(Strategy::TimeSharing, cfg, seed).t_total_s);
        }
    }
}

TEST_CASE("time-sharing reports hold one teardown and one switch connection") {
    const GatewayConfig all_ts[] = {
        ts_config(Role::Gm, Role::Gm), ts_config(Role::Gm, Role::Lc),
        ts_config(Role::Lc, Role::Gm), ts_config(Role::Lc, Role::Lc),
        ts_config(Role::Go, Role::Gm), ts_config(Role::Gm, Role::Go),
        ts_config(Role::Go, Role::Lc), ts_config(Role::Lc, Role::Go),
    };
    for (const auto& cfg : all_ts) {
        const auto r = run(Strategy::TimeSharing, cfg, 47);
        CHECK(count_phase(r, PhaseKind::Disconnect) >= 1);
        int switch_connects = 0;
        for (const auto& p : r.phases) {
            if (p.tag == PhaseTag::Switch && (p.name == PhaseKind::ConnectLc ||
                                              p.name == PhaseKind::ConnectGm ||
                                              p.name == PhaseKind::CreateGo)) {
                ++switch_connects;
            }
            CHECK(is_report_phase(p.name));
        }
        CHECK(switch_connects == 1);
    }
}

TEST_CASE("the relay-assisted scheme crosses three hops and never reconfigures") {
    GatewayConfig cfg = sim_config(Role::Lc, Role::Go);
    cfg.peer_b_role = Role::Gm;
    const auto r = run(Strategy::RelayAssisted, cfg, 23);
    int hops = 0;
    for (const auto t : r.trace) {
        hops += (t == TraceToken::RelayHop || t == TraceToken::Broadcast);
    }
    CHECK(hops == 3);
    CHECK(r.reconfig_count == 0);
    CHECK(count_phase(r, PhaseKind::Reconfigure) == 0);
    CHECK(r.bytes_delivered <= 10'000'000);

    // The broadcast leg loses per-chunk like the direct Bernoulli oracle;
    // node B is the first broadcast target, so its loss stream is leg 1,
    // member 0.
    const auto oracle = test::oracle_lossy_delivery(23, combine(1, 0), Payload{10'000'000, 1400},
                                                    kParams.p2p.p_deliver);
    CHECK(r.bytes_delivered == oracle.bytes);
    CHECK(double(r.bytes_delivered) / 10'000'000 == doctest::Approx(0.93).epsilon(0.02));
}

TEST_CASE("the relay-assisted scheme needs its relay nodes") {
    GatewayConfig cfg = sim_config(Role::Lc, Role::Go);
    cfg.peer_b_role = Role::Gm;
    // A world built for another strategy lacks the relays.
    ScenarioWorld sw = build_world(Strategy::UdpMulticast, cfg, kParams, 1);
    try {
        run_relay_assisted(sw, cfg, session_with_seed(1), kParams);
        FAIL("expected precondition-violated");
    } catch (const SimError& e) {
        CHECK(e.code() == ErrorCode::PreconditionViolated);
    }
}

TEST_CASE("every strategy keeps exact accounting and bounded deliveries") {
    struct Case {
        Strategy strategy;
        GatewayConfig cfg;
        bool stream_only;
    };
    GatewayConfig relay_cfg = sim_config(Role::Lc, Role::Go);
    relay_cfg.peer_b_role = Role::Gm;
    const Case cases[] = {
        {Strategy::TimeSharing, ts_config(Role::Gm, Role::Lc), true},
        {Strategy::TimeSharing, ts_config(Role::Lc, Role::Go), true},
        {Strategy::Hybrid, sim_config(Role::Gm, Role::Lc), true},
        {Strategy::UdpMulticast, sim_config(Role::Lc, Role::Gm), false},
        {Strategy::NonStock, sim_config(Role::Lc, Role::Gm, Stack::NonStock), true},
        {Strategy::RelayAssisted, relay_cfg, false},
    };
    for (const auto& c : cases) {
        for (uint64_t seed = 0; seed < 50; ++seed) {
            const auto r = run(c.strategy, c.cfg, seed);
            double t = 0.0, e = 0.0;
            for (const auto& p : r.phases) {
                t += p.duration_s;
                e += p.energy_j;
            }
            CHECK(r.t_total_s == doctest::Approx(t).epsilon(1e-12));
            CHECK(r.e_total_j == doctest::Approx(e).epsilon(1e-12));
            CHECK(r.bytes_delivered <= 10'000'000);
            if (c.stream_only) CHECK(r.bytes_delivered == 10'000'000);
        }
    }
}

TEST_CASE("simultaneous strategies keep both attachments live while relaying") {
    const GatewayConfig cfg = sim_config(Role::Lc, Role::Gm);
    ScenarioWorld sw = build_world(Strategy::UdpMulticast, cfg, kParams, 29);
    RunOptions opts;
    opts.probe = [&](const World& w, double) {
        const NodeState& gw = w.node(sw.gateway);
        CHECK(gw.wlan.has_value());
        CHECK(gw.p2p.has_value());
    };
    run_udp_multicast(sw, cfg, session_with_seed(29), kParams, opts);
}

TEST_CASE("simultaneous relays leave the world untouched beyond the gateway") {
    for (auto [strategy, cfg] :
         {std::pair{Strategy::UdpMulticast, sim_config(Role::Lc, Role::Gm)},
          std::pair{Strategy::NonStock, sim_config(Role::Lc, Role::Gm, Stack::NonStock)}}) {
        ScenarioWorld sw = build_world(strategy, cfg, kParams, 37);
        struct Snapshot {
            std::optional<Attachment> wlan, p2p;
        };
        std::map<uint32_t, Snapshot> before;
        for (const auto& [id, node] : sw.world.nodes()) {
            before[id] = {node.wlan, node.p2p};
        }
        if (strategy == Strategy::UdpMulticast) {
            run_udp_multicast(sw, cfg, session_with_seed(37), kParams);
        } else {
            run_non_stock(sw, cfg, session_with_seed(37), kParams);
        }
        for (const auto& [id, node] : sw.world.nodes()) {
            const Snapshot& snap = before.at(id);
            auto same = [](const std::optional<Attachment>& a,
                           const std::optional<Attachment>& b) {
                if (a.has_value() != b.has_value()) return false;
                if (!a) return true;
                return a->group == b->group && a->role == b->role && a->addr == b->addr;
            };
            CHECK(same(node.wlan, snap.wlan));
            CHECK(same(node.p2p, snap.p2p));
        }
    }
}

TEST_CASE("a negotiation loser may already hold an LC attachment elsewhere") {
    // LC attachments are independent of the WiFi Direct role, so a node
    // that is a legacy client of one group can still lose a negotiation
    // and become a GM of a new group.
    World w(Stack::Stock, 43);
    const NodeId other_go = w.add_node("other", 15);
    const GroupId other =
        form_group(w, FormationMode::Autonomous, other_go, std::nullopt, kParams, 1, "other")
            .group;
    const NodeId loser = w.add_node("loser", 2);
    join_as_lc(w, other, loser);

    const NodeId winner = w.add_node("winner", 11);
    const auto res = form_group(w, FormationMode::Standard, winner, loser, kParams, 2, "new");
    CHECK(w.group(res.group).owner == winner);
    CHECK(w.node(loser).role_in(res.group) == Role::Gm);
    CHECK(w.node(loser).role_in(other) == Role::Lc); // both attachments live
}

TEST_CASE("strategy runs are replayable") {
    GatewayConfig relay_cfg = sim_config(Role::Lc, Role::Go);
    relay_cfg.peer_b_role = Role::Gm;
    const std::pair<Strategy, GatewayConfig> cases[] = {
        {Strategy::TimeSharing, ts_config(Role::Go, Role::Gm)},
        {Strategy::Hybrid, sim_config(Role::Gm, Role::Lc)},
        {Strategy::UdpMulticast, sim_config(Role::Gm, Role::Lc)},
        {Strategy::NonStock, sim_config(Role::Gm, Role::Lc, Stack::NonStock)},
        {Strategy::RelayAssisted, relay_cfg},
    };
    for (const auto& [strategy, cfg] : cases) {
        const auto a = run(strategy, cfg, 31);
        const auto b = run(strategy, cfg, 31);
        CHECK(a.t_total_s == b.t_total_s);
        CHECK(a.e_total_j == b.e_total_j);
        CHECK(a.bytes_delivered == b.bytes_delivered);
        CHECK(phase_names(a) == phase_names(b));
    }
}
