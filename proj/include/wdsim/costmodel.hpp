#ifndef WDSIM_COSTMODEL_HPP
#define WDSIM_COSTMODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wdsim/types.hpp"

namespace wdsim {

// Every cost-bearing step in the model. The first ten are the phases that
// may appear in a gateway TransferReport; the remainder are group-formation
// steps, costed through the same parameter table.
enum class PhaseKind {
    Rx,
    Tx,
    Disconnect,
    Scan,
    ConnectLc,
    ConnectGm,
    CreateGo,
    P2pServiceInit,
    ControlExchange,
    Reconfigure,
    // formation steps
    GoNegotiation,
    WpsProvision,
    AddressAssign,
    Invitation,
    AutonomousCreate,
};

const char* to_string(PhaseKind k);
bool is_report_phase(PhaseKind k); // one of the first ten

struct SimpleDist {
    enum class Kind { Constant, Normal, Uniform };
    Kind kind = Kind::Constant;
    double a = 0.0; // Constant: value; Normal: mean; Uniform: lo
    double b = 0.0; // Normal: stddev; Uniform: hi

    static SimpleDist constant(double v) { return {Kind::Constant, v, 0.0}; }
    static SimpleDist normal(double mean, double stddev) { return {Kind::Normal, mean, stddev}; }
    static SimpleDist uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }

    double mean() const;
    auto operator<=>(const SimpleDist&) const = default;
};

// Duration distribution: a single component, or a two-component mixture
// (selector picks d1 with probability mix_p). Normals are truncated at 0.
struct Dist {
    bool is_mixture = false;
    double mix_p = 0.0;
    SimpleDist d1;
    SimpleDist d2;

    static Dist constant(double v) { return {false, 0.0, SimpleDist::constant(v), {}}; }
    static Dist normal(double mean, double stddev) { return {false, 0.0, SimpleDist::normal(mean, stddev), {}}; }
    static Dist uniform(double lo, double hi) { return {false, 0.0, SimpleDist::uniform(lo, hi), {}}; }
    static Dist mixture(double p, SimpleDist fast, SimpleDist slow) { return {true, p, fast, slow}; }

    double mean() const;
    auto operator<=>(const Dist&) const = default;
};

// Samples a duration from `key` deterministically. Truncated normals use
// rejection over Box-Muller pairs.
double sample_dist(const Dist& dist, uint64_t key);

struct PhaseCostParams {
    Dist duration;
    double base_j = 0.0;
    double power_w = 0.0;

    auto operator<=>(const PhaseCostParams&) const = default;
};

struct LinkParams {
    double throughput_bps = 20e6;
    double tx_power_w = 1.2;
    double rx_power_w = 0.9;
    double multicast_penalty = 0.5; // effective throughput factor in (0, 1]
    double p_deliver = 1.0;         // per-chunk delivery probability (datagram/multicast)

    auto operator<=>(const LinkParams&) const = default;
};

struct CostSample {
    PhaseKind phase;
    double duration_s = 0.0;
    double energy_j = 0.0;
};

struct EnergyLedger {
    std::vector<CostSample> entries;

    void append(CostSample s) { entries.push_back(s); }
    double total_duration_s() const;
    double total_energy_j() const;
};

struct CostParams {
    std::map<PhaseKind, PhaseCostParams> phases;
    LinkParams wlan;
    LinkParams p2p;
    double p2p_service_init_j = 2.0;       // extra energy when WiFi Direct services must start
    double create_go_lc_peer_offset_s = 0.5; // CreateGo is faster when the joining peer is an LC
    double control_timeout_s = 5.0;
    double control_p_deliver = 1.0;
    int32_t chunk_bytes = 1400;

    static CostParams defaults();

    // Replaces every phase duration by a constant at its mean. Used for
    // additivity checks and as a debugging aid.
    CostParams with_constant_durations() const;

    const LinkParams& link(InterfaceKind k) const {
        return k == InterfaceKind::Wlan ? wlan : p2p;
    }
    LinkParams& link(InterfaceKind k) {
        return k == InterfaceKind::Wlan ? wlan : p2p;
    }

    auto operator<=>(const CostParams&) const = default;
};

// WiFi Direct service startup is required exactly when the gateway held
// only a standard-WiFi attachment and is about to take a WiFi Direct role.
bool needs_p2p_service_init(Role previous, Role next);

// Duration + energy of a phase. `occurrence` distinguishes repeated phases
// of the same kind within one run; `peer_role` applies the CreateGo offset.
// Unknown phase -> MissingParameter error.
CostSample sample_phase(const CostParams& params, PhaseKind kind, uint64_t run_key,
                        uint64_t occurrence = 0, std::optional<Role> peer_role = std::nullopt);

// Pure transfer arithmetic: duration = bytes*8 / (throughput * penalty-if-
// multicast); energy = direction power * duration.
CostSample transfer_cost(int64_t bytes, const LinkParams& link, ChannelKind kind,
                         Direction direction);

struct ReferenceBaselines {
    double autonomous_creation_s = 0.0;
    double join_existing_s = 0.0;
    double persistent_rejoin_s = 0.0;
};

// Expected first-time formation times implied by the configured
// distributions, for cross-checking against the published measurements
// (autonomous creation 3 s, joining an existing group 6 s).
ReferenceBaselines reference_baselines(const CostParams& params);

} // namespace wdsim

#endif
