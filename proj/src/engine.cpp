#include "wdsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wdsim/rng.hpp"

namespace wdsim {

void EventQueue::schedule(double time, Action action) {
    if (time < now_) {
        throw SimError(ErrorCode::SchedulingError,
                       "event scheduled in the past (t=" + std::to_string(time) + " < now=" +
                           std::to_string(now_) + ")");
    }
    heap_.push(Entry{time, next_seq_++, std::move(action)});
}

void EventQueue::run_until_idle() {
    while (!heap_.empty()) {
        Entry e = heap_.top();
        heap_.pop();
        now_ = e.time;
        e.action();
        ++executed_;
        if (observer_) observer_(now_);
    }
}

MetricStats summarize(const std::vector<double>& values) {
    MetricStats s;
    if (values.empty()) return s;
    double sum = 0.0;
    s.min = values.front();
    s.max = values.front();
    for (double v : values) {
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = sum / double(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(sq / double(values.size() - 1));
    }
    return s;
}

RunStats compute_stats(const std::vector<TransferReport>& reports) {
    std::vector<double> t_total, e_total, t_switch, e_switch, bytes, reconf;
    t_total.reserve(reports.size());
    for (const auto& r : reports) {
        t_total.push_back(r.t_total_s);
        e_total.push_back(r.e_total_j);
        t_switch.push_back(r.t_switch_s());
        e_switch.push_back(r.e_switch_j());
        bytes.push_back(double(r.bytes_delivered));
        reconf.push_back(double(r.reconfig_count));
    }
    RunStats s;
    s.t_total = summarize(t_total);
    s.e_total = summarize(e_total);
    s.t_switch = summarize(t_switch);
    s.e_switch = summarize(e_switch);
    s.bytes_delivered = summarize(bytes);
    s.reconfig_count = summarize(reconf);
    return s;
}

namespace {

void validate_spec(const ExperimentSpec& spec) {
    if (spec.n_runs < 1) {
        throw SimError(ErrorCode::InvalidArgument, "n_runs must be at least 1");
    }
    if (spec.payload_bytes < 0) {
        throw SimError(ErrorCode::InvalidArgument, "payload must be nonnegative");
    }
    if (auto why = validate_config(spec.config)) {
        throw SimError(ErrorCode::ConfigRejected, *why);
    }
}

Session session_for(const ExperimentSpec& spec, int run_index, uint64_t seed) {
    Session s;
    s.payload_bytes = spec.payload_bytes;
    s.chunk_bytes = spec.chunk_bytes;
    s.run_seed = seed;
    s.run_index = run_index;
    s.second_gateway = spec.second_gateway;
    return s;
}

} // namespace

TransferReport run_single(const ExperimentSpec& spec, int run_index) {
    validate_spec(spec);
    const Session session =
        session_for(spec, run_index, run_seed(spec.master_seed, uint64_t(run_index)));
    return run_strategy(spec.strategy, spec.config, session, spec.params);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    validate_spec(spec);
    ExperimentResult result;
    result.reports.reserve(size_t(spec.n_runs));
    for (int i = 0; i < spec.n_runs; ++i) {
        result.reports.push_back(run_single(spec, i));
    }
    result.stats = compute_stats(result.reports);
    return result;
}

ExperimentSpec reversed(const ExperimentSpec& spec) {
    ExperimentSpec r = spec;
    std::swap(r.config.role_in_a, r.config.role_in_b);
    std::swap(r.config.peer_a_role, r.config.peer_b_role);
    return r;
}

std::vector<TransferReport> run_continuous(const ExperimentSpec& spec, int run_index, int legs) {
    validate_spec(spec);
    if (legs < 1) {
        throw SimError(ErrorCode::InvalidArgument, "a continuous relay needs at least one leg");
    }
    const uint64_t base = run_seed(spec.master_seed, uint64_t(run_index));
    std::vector<TransferReport> reports;
    reports.reserve(size_t(legs));
    for (int leg = 0; leg < legs; ++leg) {
        const ExperimentSpec& s = (leg % 2 == 0) ? spec : reversed(spec);
        // Each leg is a complete relay session with its own derived seed.
        Session session = session_for(s, run_index, combine(base, uint64_t(leg)));
        reports.push_back(run_strategy(s.strategy, s.config, session, s.params));
    }
    return reports;
}

} // namespace wdsim
