#include "wdsim/topology.hpp"

#include <algorithm>

#include "wdsim/addressing.hpp"
#include "wdsim/rng.hpp"

namespace wdsim {

Role NodeState::role_in(GroupId g) const {
    if (wlan && wlan->group == g) return wlan->role;
    if (p2p && p2p->group == g) return p2p->role;
    return Role::Detached;
}

bool Group::has_member(NodeId n) const {
    return std::any_of(members.begin(), members.end(),
                       [&](const auto& m) { return m.first == n; });
}

Role Group::member_role(NodeId n) const {
    for (const auto& [id, role] : members) {
        if (id == n) return role;
    }
    return Role::Detached;
}

NodeId World::add_node(std::string name, int intent) {
    NodeId id{next_node_++};
    NodeState st;
    st.id = id;
    st.name = std::move(name);
    st.intent = intent;
    nodes_.emplace(id.value, std::move(st));
    return id;
}

NodeState& World::node(NodeId id) {
    auto it = nodes_.find(id.value);
    if (it == nodes_.end()) {
        throw SimError(ErrorCode::InvalidArgument, "unknown node id " + std::to_string(id.value));
    }
    return it->second;
}

const NodeState& World::node(NodeId id) const {
    return const_cast<World*>(this)->node(id);
}

Group& World::group(GroupId id) {
    auto it = groups_.find(id.value);
    if (it == groups_.end()) {
        throw SimError(ErrorCode::InvalidArgument, "unknown group id " + std::to_string(id.value));
    }
    return it->second;
}

const Group& World::group(GroupId id) const {
    return const_cast<World*>(this)->group(id);
}

bool World::has_group(GroupId id) const {
    return groups_.count(id.value) != 0;
}

Group& World::create_group(NodeId owner, std::string ssid, bool persistent) {
    Group g;
    g.id = GroupId{next_group_++};
    g.owner = owner;
    g.persistent = persistent;
    g.ssid = std::move(ssid);
    g.scope_index = next_scope_++;
    auto [it, inserted] = groups_.emplace(g.id.value, std::move(g));
    return it->second;
}

void World::dissolve_group(GroupId id) {
    Group& g = group(id);
    for (const auto& [member, role] : g.members) {
        NodeState& n = node(member);
        const InterfaceKind k = role == Role::Lc ? InterfaceKind::Wlan : InterfaceKind::P2p;
        if (n.attachment(k) && n.attachment(k)->group == id) n.attachment(k).reset();
    }
    NodeState& owner = node(g.owner);
    if (owner.p2p && owner.p2p->group == id) owner.p2p.reset();
    groups_.erase(id.value);
}

void World::attach(NodeId nid, GroupId gid, Role role, Ipv4Addr addr) {
    if (role == Role::Detached) {
        throw SimError(ErrorCode::InvalidArgument, "cannot attach as Detached");
    }
    NodeState& n = node(nid);
    const InterfaceKind k = role == Role::Lc ? InterfaceKind::Wlan : InterfaceKind::P2p;
    if (n.attachment(k)) {
        throw SimError(ErrorCode::PreconditionViolated,
                       n.name + " already holds a live " + std::string(to_string(k)) +
                           " attachment");
    }
    n.attachment(k) = Attachment{gid, role, addr};
}

void World::detach(NodeId nid, InterfaceKind k) {
    NodeState& n = node(nid);
    auto& att = n.attachment(k);
    if (!att) {
        throw SimError(ErrorCode::PreconditionViolated,
                       n.name + " has no live " + std::string(to_string(k)) + " attachment");
    }
    const GroupId gid = att->group;
    if (has_group(gid)) {
        Group& g = group(gid);
        if (g.owner == nid) {
            att.reset();
            dissolve_group(gid); // the GO role cannot be transferred
            return;
        }
        g.members.erase(std::remove_if(g.members.begin(), g.members.end(),
                                       [&](const auto& m) { return m.first == nid; }),
                        g.members.end());
    }
    att.reset();
}

void World::remember_group(const Group& g) {
    PersistentRecord rec;
    rec.owner = g.owner;
    rec.members = g.members;
    rec.ssid = g.ssid;
    rec.credentialed.insert(g.owner);
    for (const auto& [id, role] : g.members) rec.credentialed.insert(id);
    records_[g.ssid] = std::move(rec);
}

bool World::has_credentials(NodeId n, const std::string& ssid) const {
    auto it = records_.find(ssid);
    return it != records_.end() && it->second.credentialed.count(n) != 0;
}

const PersistentRecord* World::record_for(const std::string& ssid) const {
    auto it = records_.find(ssid);
    return it == records_.end() ? nullptr : &it->second;
}

NegotiationWinner negotiate_go(IntentValue intent_a, IntentValue intent_b, bool tie_breaker_a) {
    if (intent_a.value() > intent_b.value()) return NegotiationWinner::A;
    if (intent_b.value() > intent_a.value()) return NegotiationWinner::B;
    return tie_breaker_a ? NegotiationWinner::A : NegotiationWinner::B;
}

namespace {

// A node that is already a GM of some group refuses connection requests
// from a would-be GO.
bool is_gm_elsewhere(const World& w, NodeId n) {
    const NodeState& st = w.node(n);
    return st.p2p.has_value() && st.p2p->role == Role::Gm;
}

} // namespace

FormationResult form_group(World& world, FormationMode mode, NodeId initiator,
                           std::optional<NodeId> responder, const CostParams& params,
                           uint64_t key, const std::string& ssid) {
    std::vector<CostSample> costs;

    switch (mode) {
        case FormationMode::Autonomous: {
            if (responder) {
                throw SimError(ErrorCode::InvalidArgument,
                               "autonomous formation takes no responder");
            }
            costs.push_back(sample_phase(params, PhaseKind::AutonomousCreate, key));
            Group& g = world.create_group(initiator, ssid);
            world.attach(initiator, g.id, Role::Go, assign_address(world, g.id, initiator));
            world.remember_group(g);
            return {g.id, std::move(costs)};
        }

        case FormationMode::Standard: {
            if (!responder) {
                throw SimError(ErrorCode::InvalidArgument,
                               "standard formation requires a responder");
            }
            if (is_gm_elsewhere(world, *responder)) {
                throw SimError(ErrorCode::ConnectionRefused,
                               "responder is a GM of another group; connection refused");
            }
            if (is_gm_elsewhere(world, initiator)) {
                throw SimError(ErrorCode::ConnectionRefused,
                               "initiator is a GM of another group; connection refused");
            }
            const NodeState& a = world.node(initiator);
            const NodeState& b = world.node(*responder);
            const auto winner =
                negotiate_go(IntentValue(a.intent), IntentValue(b.intent), true);
            const NodeId owner = winner == NegotiationWinner::A ? initiator : *responder;
            const NodeId member = winner == NegotiationWinner::A ? *responder : initiator;

            costs.push_back(sample_phase(params, PhaseKind::GoNegotiation, key));
            costs.push_back(sample_phase(params, PhaseKind::WpsProvision, key));
            costs.push_back(sample_phase(params, PhaseKind::AddressAssign, key));

            Group& g = world.create_group(owner, ssid);
            world.attach(owner, g.id, Role::Go, assign_address(world, g.id, owner));
            g.members.emplace_back(member, Role::Gm);
            world.attach(member, g.id, Role::Gm, assign_address(world, g.id, member));
            world.remember_group(g);
            return {g.id, std::move(costs)};
        }

        case FormationMode::Persistent: {
            const PersistentRecord* rec = world.record_for(ssid);
            if (!rec || !world.has_credentials(initiator, ssid) ||
                (responder && !world.has_credentials(*responder, ssid))) {
                throw SimError(ErrorCode::MissingCredentials,
                               "no stored credentials for persistent group " + ssid);
            }
            costs.push_back(sample_phase(params, PhaseKind::Invitation, key));
            costs.push_back(sample_phase(params, PhaseKind::AddressAssign, key));

            // Roles come back exactly as stored.
            Group& g = world.create_group(rec->owner, ssid);
            world.attach(rec->owner, g.id, Role::Go, assign_address(world, g.id, rec->owner));
            for (const auto& [member, role] : rec->members) {
                g.members.emplace_back(member, role);
                world.attach(member, g.id, role, assign_address(world, g.id, member));
            }
            return {g.id, std::move(costs)};
        }
    }
    throw SimError(ErrorCode::InvalidArgument, "unknown formation mode");
}

void join_as_lc(World& world, GroupId group_id, NodeId node_id) {
    Group& g = world.group(group_id);
    if (g.owner == node_id) {
        throw SimError(ErrorCode::AlreadyMember, "the owner cannot join its own group");
    }
    if (g.has_member(node_id)) {
        throw SimError(ErrorCode::AlreadyMember, "node is already a member of this group");
    }
    g.members.emplace_back(node_id, Role::Lc);
    world.attach(node_id, group_id, Role::Lc, assign_address(world, group_id, node_id));
}

std::string GatewayConfig::label() const {
    std::string s;
    s += to_string(peer_a_role);
    s += "-";
    s += to_string(role_in_a);
    s += "/";
    s += to_string(role_in_b);
    s += "-";
    s += to_string(peer_b_role);
    s += ":";
    s += to_string(mode);
    s += ":";
    s += to_string(stack);
    return s;
}

std::optional<std::string> validate_config(const GatewayConfig& cfg) {
    auto active = [](Role r) { return r == Role::Go || r == Role::Gm || r == Role::Lc; };
    if (!active(cfg.role_in_a) || !active(cfg.role_in_b)) {
        return "the gateway needs an active role (GO, GM or LC) in both groups";
    }
    if (!active(cfg.peer_a_role) || !active(cfg.peer_b_role)) {
        return "both peers need an active role (GO, GM or LC)";
    }

    // Peer shape: the far-end node owns the group unless the gateway does.
    for (auto [gw, peer, side] : {std::tuple{cfg.role_in_a, cfg.peer_a_role, 'A'},
                                  std::tuple{cfg.role_in_b, cfg.peer_b_role, 'B'}}) {
        if (gw == Role::Go && peer == Role::Go) {
            return std::string("group ") + side + ": a group has exactly one GO";
        }
        if (gw != Role::Go && peer != Role::Go) {
            return std::string("group ") + side +
                   ": the peer must own the group when the gateway does not";
        }
    }

    if (cfg.mode == AttachMode::TimeSharing) {
        if (cfg.role_in_a == Role::Go && cfg.role_in_b == Role::Go) {
            return "GO/GO is invalid: a GO cannot join another group as GO";
        }
        return std::nullopt;
    }

    // Simultaneous operation: one WLAN attachment plus one P2P attachment.
    // Multiple WiFi Direct interfaces are not available on either stack.
    const int lc_count = (cfg.role_in_a == Role::Lc) + (cfg.role_in_b == Role::Lc);
    if (lc_count != 1) {
        if (lc_count == 0) {
            return "simultaneous operation requires exactly one LC role: a single "
                   "device cannot hold two WiFi Direct interfaces";
        }
        return "simultaneous operation requires exactly one WiFi Direct role "
               "(GM or GO) next to the LC attachment";
    }
    return std::nullopt;
}

} // namespace wdsim
