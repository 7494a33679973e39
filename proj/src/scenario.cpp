#include "wdsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace wdsim {

namespace {

std::string fmt(double v, const char* spec = "%.9g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string fmt_exact(double v) { return fmt(v, "%.17g"); }

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) return std::nullopt;
        return v;
    } catch (...) {
        return std::nullopt;
    }
}

std::optional<int64_t> parse_int(const std::string& s) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) return std::nullopt;
        return v;
    } catch (...) {
        return std::nullopt;
    }
}

std::optional<Role> parse_role(const std::string& s) {
    if (s == "GO") return Role::Go;
    if (s == "GM") return Role::Gm;
    if (s == "LC") return Role::Lc;
    return std::nullopt;
}

std::optional<bool> parse_bool(const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    return std::nullopt;
}

struct PhaseKey {
    PhaseKind kind;
    const char* name;
};

// Phases whose duration and energy parameters are file-configurable (the
// transfer phases are computed from link parameters instead).
constexpr PhaseKey kPhaseKeys[] = {
    {PhaseKind::Disconnect, "disconnect"},
    {PhaseKind::Scan, "scan"},
    {PhaseKind::ConnectLc, "connect_lc"},
    {PhaseKind::ConnectGm, "connect_gm"},
    {PhaseKind::CreateGo, "create_go"},
    {PhaseKind::P2pServiceInit, "p2p_service_init"},
    {PhaseKind::ControlExchange, "control_exchange"},
    {PhaseKind::GoNegotiation, "go_negotiation"},
    {PhaseKind::WpsProvision, "wps_provision"},
    {PhaseKind::AddressAssign, "address_assign"},
    {PhaseKind::Invitation, "invitation"},
    {PhaseKind::AutonomousCreate, "autonomous_create"},
};

std::optional<PhaseKind> phase_by_key(const std::string& name) {
    for (const auto& pk : kPhaseKeys) {
        if (name == pk.name) return pk.kind;
    }
    return std::nullopt;
}

const char* key_for_phase(PhaseKind k) {
    for (const auto& pk : kPhaseKeys) {
        if (pk.kind == k) return pk.name;
    }
    return nullptr;
}

// Collected duration-distribution subkeys for one phase; resolved into a
// Dist once the whole file has been read.
struct DistBuilder {
    std::optional<double> constant_s, mean_s, std_s, lo_s, hi_s;
    std::optional<double> mix_p, fast_lo_s, fast_hi_s, slow_lo_s, slow_hi_s;
    int line = 0;

    bool any() const {
        return constant_s || mean_s || std_s || lo_s || hi_s || mix_p || fast_lo_s ||
               fast_hi_s || slow_lo_s || slow_hi_s;
    }
};

std::optional<Dist> resolve_dist(const DistBuilder& b, const std::string& phase,
                                 std::vector<ScenarioError>& errors) {
    auto fail = [&](const std::string& msg) -> std::optional<Dist> {
        errors.push_back({b.line, "phase." + phase + ": " + msg});
        return std::nullopt;
    };
    if (b.mix_p) {
        if (b.constant_s || b.mean_s || b.std_s || b.lo_s || b.hi_s) {
            return fail("mixture parameters conflict with another distribution form");
        }
        if (!(b.fast_lo_s && b.fast_hi_s && b.slow_lo_s && b.slow_hi_s)) {
            return fail("a mixture needs fast_lo_s, fast_hi_s, slow_lo_s and slow_hi_s");
        }
        if (*b.mix_p < 0.0 || *b.mix_p > 1.0) return fail("mix_p must be in [0, 1]");
        return Dist::mixture(*b.mix_p, SimpleDist::uniform(*b.fast_lo_s, *b.fast_hi_s),
                             SimpleDist::uniform(*b.slow_lo_s, *b.slow_hi_s));
    }
    if (b.fast_lo_s || b.fast_hi_s || b.slow_lo_s || b.slow_hi_s) {
        return fail("mixture bounds require mix_p");
    }
    if (b.constant_s) {
        if (b.mean_s || b.std_s || b.lo_s || b.hi_s) {
            return fail("constant_s conflicts with another distribution form");
        }
        return Dist::constant(*b.constant_s);
    }
    if (b.mean_s || b.std_s) {
        if (b.lo_s || b.hi_s) return fail("normal and uniform forms conflict");
        if (!(b.mean_s && b.std_s)) return fail("a normal needs both mean_s and std_s");
        return Dist::normal(*b.mean_s, *b.std_s);
    }
    if (b.lo_s || b.hi_s) {
        if (!(b.lo_s && b.hi_s)) return fail("a uniform needs both lo_s and hi_s");
        if (*b.hi_s < *b.lo_s) return fail("hi_s must not be below lo_s");
        return Dist::uniform(*b.lo_s, *b.hi_s);
    }
    return std::nullopt; // keep the default
}

} // namespace

ParseResult parse_scenario(const std::string& text) {
    ParseResult result;
    std::vector<ScenarioError>& errors = result.errors;
    ExperimentSpec spec;
    spec.params = CostParams::defaults();

    std::optional<Stack> explicit_stack;
    bool peer_a_given = false;
    bool peer_b_given = false;
    int role_line = 0;
    std::map<PhaseKind, DistBuilder> builders;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back({line_no, "expected key=value"});
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        auto bad_value = [&](const std::string& what) {
            errors.push_back({line_no, "key '" + key + "': " + what + " (got '" + value + "')"});
        };
        auto need_double = [&](double lo = -1e300) -> std::optional<double> {
            auto v = parse_double(value);
            if (!v || *v < lo) {
                bad_value(lo == 0.0 ? "expected a nonnegative number" : "expected a number");
                return std::nullopt;
            }
            return v;
        };

        if (key == "strategy") {
            if (auto s = strategy_from_string(value)) {
                spec.strategy = *s;
            } else {
                bad_value("unknown strategy");
            }
        } else if (key == "role_in_a" || key == "role_in_b" || key == "peer_a_role" ||
                   key == "peer_b_role") {
            auto r = parse_role(value);
            if (!r) {
                bad_value("expected GO, GM or LC");
                continue;
            }
            role_line = line_no;
            if (key == "role_in_a") spec.config.role_in_a = *r;
            else if (key == "role_in_b") spec.config.role_in_b = *r;
            else if (key == "peer_a_role") spec.config.peer_a_role = *r, peer_a_given = true;
            else spec.config.peer_b_role = *r, peer_b_given = true;
        } else if (key == "stack") {
            if (value == "stock") explicit_stack = Stack::Stock;
            else if (value == "non_stock") explicit_stack = Stack::NonStock;
            else bad_value("expected stock or non_stock");
        } else if (key == "payload_mb") {
            if (auto v = need_double(0.0)) spec.payload_bytes = int64_t(*v * 1e6 + 0.5);
        } else if (key == "runs") {
            auto v = parse_int(value);
            if (!v || *v < 1) bad_value("expected a positive integer");
            else spec.n_runs = int(*v);
        } else if (key == "seed") {
            auto v = parse_int(value);
            if (!v || *v < 0) bad_value("expected a nonnegative integer");
            else spec.master_seed = uint64_t(*v);
        } else if (key == "chunk_bytes") {
            auto v = parse_int(value);
            if (!v || *v < 1) bad_value("expected a positive integer");
            else spec.chunk_bytes = int32_t(*v);
        } else if (key == "second_gateway") {
            auto v = parse_bool(value);
            if (!v) bad_value("expected true or false");
            else spec.second_gateway = *v;
        } else if (key == "control_timeout_s") {
            if (auto v = need_double(0.0)) spec.params.control_timeout_s = *v;
        } else if (key == "control_p_deliver") {
            if (auto v = need_double(0.0)) spec.params.control_p_deliver = *v;
        } else if (key == "p2p_service_init_j") {
            if (auto v = need_double(0.0)) {
                spec.params.p2p_service_init_j = *v;
                spec.params.phases[PhaseKind::P2pServiceInit].base_j = *v;
            }
        } else if (key == "create_go_lc_peer_offset_s") {
            if (auto v = need_double(0.0)) spec.params.create_go_lc_peer_offset_s = *v;
        } else if (key.rfind("link.", 0) == 0) {
            const std::string rest = key.substr(5);
            const size_t dot = rest.find('.');
            if (dot == std::string::npos) {
                errors.push_back({line_no, "unknown key '" + key + "'"});
                continue;
            }
            const std::string which = rest.substr(0, dot);
            const std::string field = rest.substr(dot + 1);
            if (which != "wlan" && which != "p2p") {
                errors.push_back({line_no, "unknown link '" + which + "'"});
                continue;
            }
            LinkParams& link =
                spec.params.link(which == "wlan" ? InterfaceKind::Wlan : InterfaceKind::P2p);
            if (field == "throughput_mbps") {
                if (auto v = need_double(0.0)) link.throughput_bps = *v * 1e6;
            } else if (field == "tx_power_w") {
                if (auto v = need_double(0.0)) link.tx_power_w = *v;
            } else if (field == "rx_power_w") {
                if (auto v = need_double(0.0)) link.rx_power_w = *v;
            } else if (field == "multicast_penalty") {
                auto v = need_double(0.0);
                if (v && (*v <= 0.0 || *v > 1.0)) bad_value("penalty must be in (0, 1]");
                else if (v) link.multicast_penalty = *v;
            } else if (field == "p_deliver") {
                auto v = need_double(0.0);
                if (v && *v > 1.0) bad_value("probability must be in [0, 1]");
                else if (v) link.p_deliver = *v;
            } else {
                errors.push_back({line_no, "unknown key '" + key + "'"});
            }
        } else if (key.rfind("phase.", 0) == 0) {
            const std::string rest = key.substr(6);
            const size_t dot = rest.find('.');
            if (dot == std::string::npos) {
                errors.push_back({line_no, "unknown key '" + key + "'"});
                continue;
            }
            const std::string name = rest.substr(0, dot);
            const std::string field = rest.substr(dot + 1);
            const auto kind = phase_by_key(name);
            if (!kind) {
                errors.push_back({line_no, "unknown phase '" + name + "'"});
                continue;
            }
            if (field == "base_j") {
                if (auto v = need_double(0.0)) spec.params.phases[*kind].base_j = *v;
                continue;
            }
            if (field == "power_w") {
                if (auto v = need_double(0.0)) spec.params.phases[*kind].power_w = *v;
                continue;
            }
            DistBuilder& b = builders[*kind];
            b.line = line_no;
            auto v = need_double(field == "mix_p" ? -1e300 : 0.0);
            if (!v) continue;
            if (field == "constant_s") b.constant_s = *v;
            else if (field == "mean_s") b.mean_s = *v;
            else if (field == "std_s") b.std_s = *v;
            else if (field == "lo_s") b.lo_s = *v;
            else if (field == "hi_s") b.hi_s = *v;
            else if (field == "mix_p") b.mix_p = *v;
            else if (field == "fast_lo_s") b.fast_lo_s = *v;
            else if (field == "fast_hi_s") b.fast_hi_s = *v;
            else if (field == "slow_lo_s") b.slow_lo_s = *v;
            else if (field == "slow_hi_s") b.slow_hi_s = *v;
            else errors.push_back({line_no, "unknown key '" + key + "'"});
        } else {
            errors.push_back({line_no, "unknown key '" + key + "'"});
        }
    }

    for (const auto& [kind, builder] : builders) {
        if (!builder.any()) continue;
        if (auto dist = resolve_dist(builder, key_for_phase(kind), errors)) {
            spec.params.phases[kind].duration = *dist;
        }
    }

    // Unstated peer roles follow the gateway's: the far end owns the group
    // unless the gateway does, in which case it hosts a GM.
    if (!peer_a_given) {
        spec.config.peer_a_role = spec.config.role_in_a == Role::Go ? Role::Gm : Role::Go;
    }
    if (!peer_b_given) {
        spec.config.peer_b_role = spec.config.role_in_b == Role::Go ? Role::Gm : Role::Go;
    }

    // Mode and stack follow the strategy unless stated.
    spec.config.mode = spec.strategy == Strategy::TimeSharing ? AttachMode::TimeSharing
                                                              : AttachMode::Simultaneous;
    if (explicit_stack) {
        spec.config.stack = *explicit_stack;
    } else if (spec.strategy == Strategy::NonStock) {
        spec.config.stack = Stack::NonStock;
    }
    if (spec.strategy == Strategy::NonStock && spec.config.stack == Stack::Stock) {
        errors.push_back({role_line, "strategy non_stock requires stack=non_stock"});
    }

    if (errors.empty()) {
        if (auto why = validate_config(spec.config)) {
            errors.push_back({role_line, "invalid gateway configuration: " + *why});
        }
    }
    if (errors.empty()) result.spec = std::move(spec);
    return result;
}

namespace {

void emit_dist(std::ostringstream& out, const std::string& prefix, const Dist& d) {
    if (d.is_mixture) {
        out << prefix << ".mix_p=" << fmt_exact(d.mix_p) << "\n";
        out << prefix << ".fast_lo_s=" << fmt_exact(d.d1.a) << "\n";
        out << prefix << ".fast_hi_s=" << fmt_exact(d.d1.b) << "\n";
        out << prefix << ".slow_lo_s=" << fmt_exact(d.d2.a) << "\n";
        out << prefix << ".slow_hi_s=" << fmt_exact(d.d2.b) << "\n";
        return;
    }
    switch (d.d1.kind) {
        case SimpleDist::Kind::Constant:
            out << prefix << ".constant_s=" << fmt_exact(d.d1.a) << "\n";
            break;
        case SimpleDist::Kind::Normal:
            out << prefix << ".mean_s=" << fmt_exact(d.d1.a) << "\n";
            out << prefix << ".std_s=" << fmt_exact(d.d1.b) << "\n";
            break;
        case SimpleDist::Kind::Uniform:
            out << prefix << ".lo_s=" << fmt_exact(d.d1.a) << "\n";
            out << prefix << ".hi_s=" << fmt_exact(d.d1.b) << "\n";
            break;
    }
}

void emit_link(std::ostringstream& out, const std::string& which, const LinkParams& l) {
    out << "link." << which << ".throughput_mbps=" << fmt_exact(l.throughput_bps / 1e6) << "\n";
    out << "link." << which << ".tx_power_w=" << fmt_exact(l.tx_power_w) << "\n";
    out << "link." << which << ".rx_power_w=" << fmt_exact(l.rx_power_w) << "\n";
    out << "link." << which << ".multicast_penalty=" << fmt_exact(l.multicast_penalty) << "\n";
    out << "link." << which << ".p_deliver=" << fmt_exact(l.p_deliver) << "\n";
}

} // namespace

std::string emit_scenario(const ExperimentSpec& spec) {
    std::ostringstream out;
    out << "strategy=" << to_string(spec.strategy) << "\n";
    out << "role_in_a=" << to_string(spec.config.role_in_a) << "\n";
    out << "role_in_b=" << to_string(spec.config.role_in_b) << "\n";
    out << "peer_a_role=" << to_string(spec.config.peer_a_role) << "\n";
    out << "peer_b_role=" << to_string(spec.config.peer_b_role) << "\n";
    out << "stack=" << (spec.config.stack == Stack::Stock ? "stock" : "non_stock") << "\n";
    out << "payload_mb=" << fmt_exact(double(spec.payload_bytes) / 1e6) << "\n";
    out << "runs=" << spec.n_runs << "\n";
    out << "seed=" << spec.master_seed << "\n";
    out << "chunk_bytes=" << spec.chunk_bytes << "\n";
    out << "second_gateway=" << (spec.second_gateway ? "true" : "false") << "\n";
    out << "control_timeout_s=" << fmt_exact(spec.params.control_timeout_s) << "\n";
    out << "control_p_deliver=" << fmt_exact(spec.params.control_p_deliver) << "\n";
    out << "create_go_lc_peer_offset_s=" << fmt_exact(spec.params.create_go_lc_peer_offset_s)
        << "\n";
    emit_link(out, "wlan", spec.params.wlan);
    emit_link(out, "p2p", spec.params.p2p);
    for (const auto& pk : kPhaseKeys) {
        auto it = spec.params.phases.find(pk.kind);
        if (it == spec.params.phases.end()) continue;
        const std::string prefix = std::string("phase.") + pk.name;
        emit_dist(out, prefix, it->second.duration);
        out << prefix << ".base_j=" << fmt_exact(it->second.base_j) << "\n";
        out << prefix << ".power_w=" << fmt_exact(it->second.power_w) << "\n";
    }
    return out.str();
}

const char* const kCsvHeader =
    "run_id,strategy,config,t_rx_s,t_switch_s,t_tx_s,t_total_s,"
    "e_rx_j,e_switch_j,e_tx_j,e_total_j,bytes_delivered,reconfig_count";

std::string emit_csv(const std::vector<TransferReport>& reports) {
    std::vector<const TransferReport*> ordered;
    ordered.reserve(reports.size());
    for (const auto& r : reports) ordered.push_back(&r);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const TransferReport* a, const TransferReport* b) {
                         return a->run_index < b->run_index;
                     });

    std::string out = kCsvHeader;
    out += "\n";
    for (const TransferReport* r : ordered) {
        out += std::to_string(r->run_index);
        out += ",";
        out += to_string(r->strategy);
        out += ",";
        out += r->config.label();
        out += ",";
        out += fmt(r->t_rx_s());
        out += ",";
        out += fmt(r->t_switch_s());
        out += ",";
        out += fmt(r->t_tx_s());
        out += ",";
        out += fmt(r->t_total_s);
        out += ",";
        out += fmt(r->e_rx_j());
        out += ",";
        out += fmt(r->e_switch_j());
        out += ",";
        out += fmt(r->e_tx_j());
        out += ",";
        out += fmt(r->e_total_j);
        out += ",";
        out += std::to_string(r->bytes_delivered);
        out += ",";
        out += std::to_string(r->reconfig_count);
        out += "\n";
    }
    return out;
}

std::vector<RankingRow> compare_strategies(const std::vector<ExperimentSpec>& specs) {
    if (specs.size() < 2) {
        throw SimError(ErrorCode::InvalidArgument, "a comparison needs at least two scenarios");
    }
    for (const auto& s : specs) {
        if (s.payload_bytes != specs.front().payload_bytes) {
            throw SimError(ErrorCode::InvalidArgument,
                           "mismatched payloads: all compared scenarios must move the same data");
        }
    }
    std::vector<RankingRow> rows;
    rows.reserve(specs.size());
    for (const auto& s : specs) {
        const ExperimentResult res = run_experiment(s);
        rows.push_back({s.strategy, s.config.label(), res.stats.t_total.mean,
                        res.stats.e_total.mean});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const RankingRow& a, const RankingRow& b) {
        if (a.mean_t_total_s != b.mean_t_total_s) return a.mean_t_total_s < b.mean_t_total_s;
        return a.mean_e_total_j < b.mean_e_total_j;
    });
    return rows;
}

std::string format_ranking(const std::vector<RankingRow>& rows) {
    std::ostringstream out;
    out << "rank,strategy,config,mean_t_total_s,mean_e_total_j\n";
    int rank = 1;
    for (const auto& r : rows) {
        out << rank++ << "," << to_string(r.strategy) << "," << r.config << ","
            << fmt(r.mean_t_total_s) << "," << fmt(r.mean_e_total_j) << "\n";
    }
    return out.str();
}

} // namespace wdsim
