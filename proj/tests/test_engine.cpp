#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "wdsim/engine.hpp"
#include "wdsim/scenario.hpp"

using namespace wdsim;
using test::sim_config;
using test::ts_config;

namespace {

ExperimentSpec make_spec(Strategy strategy, GatewayConfig cfg, int runs = 10,
                         uint64_t seed = 0) {
    ExperimentSpec spec;
    spec.strategy = strategy;
    spec.config = cfg;
    spec.n_runs = runs;
    spec.master_seed = seed;
    return spec;
}

} // namespace

TEST_CASE("an empty queue is a no-op") {
    EventQueue q;
    q.run_until_idle();
    CHECK(q.now() == 0.0);
    CHECK(q.executed() == 0);
    CHECK(q.idle());
}

TEST_CASE("equal-time events run in insertion order") {
    EventQueue q;
    std::vector<int> order;
    q.schedule(1.0, [&] { order.push_back(0); });
    q.schedule(0.5, [&] { order.push_back(9); });
    q.schedule(1.0, [&] { order.push_back(1); });
    q.schedule(1.0, [&] { order.push_back(2); });
    q.run_until_idle();
    CHECK(order == std::vector<int>{9, 0, 1, 2});
    CHECK(q.now() == 1.0);
    CHECK(q.executed() == 4);
}

TEST_CASE("scheduling into the past is an error") {
    EventQueue q;
    q.schedule(2.0, [&] {
        CHECK_THROWS_AS(q.schedule(1.0, [] {}), SimError);
        q.schedule(2.0, [] {}); // same-time chaining is allowed
    });
    q.run_until_idle();
    CHECK(q.executed() == 2);
}

TEST_CASE("events may cascade from within events") {
    EventQueue q;
    std::vector<double> times;
    q.schedule(1.0, [&] {
        times.push_back(q.now());
        q.schedule(q.now() + 0.5, [&] { times.push_back(q.now()); });
    });
    q.run_until_idle();
    CHECK(times == std::vector<double>{1.0, 1.5});
}

TEST_CASE("identical spec and seed reproduce byte-identical results") {
    const auto spec = make_spec(Strategy::TimeSharing, ts_config(Role::Lc, Role::Gm), 20, 7);
    const auto a = run_experiment(spec);
    const auto b = run_experiment(spec);
    CHECK(emit_csv(a.reports) == emit_csv(b.reports));
    CHECK(a.stats.t_total.mean == b.stats.t_total.mean);
}

TEST_CASE("per-run seeds are distinct and runs are order-insensitive") {
    std::set<uint64_t> seeds;
    for (uint64_t i = 0; i < 1000; ++i) {
        CHECK(seeds.insert(run_seed(3, i)).second);
    }
    const auto spec = make_spec(Strategy::Hybrid, sim_config(Role::Gm, Role::Lc), 8, 3);
    const auto batch = run_experiment(spec);
    const auto solo = run_single(spec, 5);
    CHECK(batch.reports[5].t_total_s == solo.t_total_s);
    CHECK(batch.reports[5].e_total_j == solo.e_total_j);
}

TEST_CASE("changing the seed never changes the phase structure") {
    struct Case {
        Strategy strategy;
        GatewayConfig cfg;
    };
    const Case cases[] = {
        {Strategy::TimeSharing, ts_config(Role::Go, Role::Gm)},
        {Strategy::Hybrid, sim_config(Role::Gm, Role::Lc)},
        {Strategy::UdpMulticast, sim_config(Role::Lc, Role::Gm)},
        {Strategy::NonStock, sim_config(Role::Lc, Role::Gm, Stack::NonStock)},
    };
    for (const auto& c : cases) {
        const auto base = test::phase_names(run_single(make_spec(c.strategy, c.cfg, 1, 0), 0));
        for (uint64_t seed = 1; seed < 25; ++seed) {
            const auto other =
                test::phase_names(run_single(make_spec(c.strategy, c.cfg, 1, seed), 0));
            CHECK(base == other);
        }
    }
}

TEST_CASE("statistics summarize the report list exactly") {
    const auto spec = make_spec(Strategy::TimeSharing, ts_config(Role::Gm, Role::Gm), 30, 11);
    const auto res = run_experiment(spec);

    // Independent recomputation.
    double sum = 0.0, mn = 1e300, mx = -1e300;
    for (const auto& r : res.reports) {
        sum += r.t_total_s;
        mn = std::min(mn, r.t_total_s);
        mx = std::max(mx, r.t_total_s);
    }
    CHECK(res.stats.t_total.mean == doctest::Approx(sum / 30).epsilon(1e-12));
    CHECK(res.stats.t_total.min == mn);
    CHECK(res.stats.t_total.max == mx);
    CHECK(res.stats.t_total.min <= res.stats.t_total.mean);
    CHECK(res.stats.t_total.mean <= res.stats.t_total.max);

    const auto recomputed = compute_stats(res.reports);
    CHECK(recomputed.t_switch.mean == res.stats.t_switch.mean);
    CHECK(recomputed.e_switch.stddev == res.stats.e_switch.stddev);
}

TEST_CASE("LC-bound switches take about half a second") {
    const auto res =
        run_experiment(make_spec(Strategy::TimeSharing, ts_config(Role::Gm, Role::Lc), 30, 5));
    CHECK(res.stats.t_switch.mean > 0.4);
    CHECK(res.stats.t_switch.mean < 0.6);
}

TEST_CASE("udp multicast delivers about 93 percent at the defaults") {
    const auto res =
        run_experiment(make_spec(Strategy::UdpMulticast, sim_config(Role::Lc, Role::Gm), 30, 5));
    const double ratio = res.stats.bytes_delivered.mean / 10'000'000;
    CHECK(ratio > 0.91);
    CHECK(ratio < 0.95);
}

TEST_CASE("continuous relays are the sum of their isolated legs under constants") {
    for (auto base : {make_spec(Strategy::TimeSharing, ts_config(Role::Lc, Role::Gm)),
                      make_spec(Strategy::Hybrid, sim_config(Role::Gm, Role::Lc)),
                      make_spec(Strategy::NonStock, sim_config(Role::Lc, Role::Gm, Stack::NonStock)),
                      make_spec(Strategy::UdpMulticast, sim_config(Role::Lc, Role::Gm))}) {
        ExperimentSpec spec = base;
        spec.params = spec.params.with_constant_durations();
        spec.params.wlan.p_deliver = 1.0;
        spec.params.p2p.p_deliver = 1.0;

        const auto legs = run_continuous(spec, 0, 2);
        REQUIRE(legs.size() == 2);
        const auto iso_ab = run_single(spec, 0);
        const auto iso_ba = run_single(reversed(spec), 0);

        const double total_t = legs[0].t_total_s + legs[1].t_total_s;
        const double total_e = legs[0].e_total_j + legs[1].e_total_j;
        CHECK(total_t == doctest::Approx(iso_ab.t_total_s + iso_ba.t_total_s).epsilon(1e-12));
        CHECK(total_e == doctest::Approx(iso_ab.e_total_j + iso_ba.e_total_j).epsilon(1e-12));
    }
}

TEST_CASE("invalid experiment specs are rejected") {
    auto spec = make_spec(Strategy::TimeSharing, ts_config(Role::Gm, Role::Gm), 0);
    CHECK_THROWS_AS(run_experiment(spec), SimError);

    spec = make_spec(Strategy::TimeSharing, ts_config(Role::Go, Role::Go), 5);
    try {
        run_experiment(spec);
        FAIL("expected config rejection");
    } catch (const SimError& e) {
        CHECK(e.code() == ErrorCode::ConfigRejected);
    }

    spec = make_spec(Strategy::TimeSharing, ts_config(Role::Gm, Role::Lc), 5);
    spec.payload_bytes = -1;
    CHECK_THROWS_AS(run_experiment(spec), SimError);
}
