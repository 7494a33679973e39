#ifndef WDSIM_ENGINE_HPP
#define WDSIM_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "wdsim/gateway.hpp"

namespace wdsim {

// Deterministic discrete-event queue. Events run in (time, sequence)
// order; the sequence number is the insertion index, so equal-time events
// execute in insertion order. Scheduling before the current time is a
// SchedulingError.
class EventQueue {
  public:
    using Action = std::function<void()>;

    void schedule(double time, Action action);
    void run_until_idle();

    double now() const { return now_; }
    uint64_t executed() const { return executed_; }
    bool idle() const { return heap_.empty(); }

    // Invoked after each executed event; used by tests to probe state.
    void set_observer(std::function<void(double)> obs) { observer_ = std::move(obs); }

  private:
    struct Entry {
        double time;
        uint64_t seq;
        Action action;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
    double now_ = 0.0;
    uint64_t next_seq_ = 0;
    uint64_t executed_ = 0;
    std::function<void(double)> observer_;
};

struct ExperimentSpec {
    Strategy strategy = Strategy::TimeSharing;
    GatewayConfig config;
    int64_t payload_bytes = 10'000'000;
    int32_t chunk_bytes = 1400;
    int n_runs = 50;
    uint64_t master_seed = 0;
    bool second_gateway = false;
    CostParams params = CostParams::defaults();

    bool operator==(const ExperimentSpec&) const = default;
};

struct MetricStats {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

MetricStats summarize(const std::vector<double>& values);

struct RunStats {
    MetricStats t_total;
    MetricStats e_total;
    MetricStats t_switch;
    MetricStats e_switch;
    MetricStats bytes_delivered;
    MetricStats reconfig_count;
};

RunStats compute_stats(const std::vector<TransferReport>& reports);

struct ExperimentResult {
    std::vector<TransferReport> reports;
    RunStats stats;
};

// Runs n_runs independent seeded repetitions (run seed i derived from the
// master seed) and aggregates statistics.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Runs a single repetition of `spec`.
TransferReport run_single(const ExperimentSpec& spec, int run_index);

// Back-to-back continuous relay: leg 0 follows spec, each further leg
// reverses direction; every leg is a complete session with its own
// sub-seed. Returns per-leg reports in order.
std::vector<TransferReport> run_continuous(const ExperimentSpec& spec, int run_index, int legs);

// The experiment spec with source and destination sides exchanged.
ExperimentSpec reversed(const ExperimentSpec& spec);

} // namespace wdsim

#endif
