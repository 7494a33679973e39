#ifndef WDSIM_TOPOLOGY_HPP
#define WDSIM_TOPOLOGY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wdsim/costmodel.hpp"
#include "wdsim/types.hpp"

namespace wdsim {

// One live attachment of a node: the group it belongs to, its fixed role
// there, and the address it holds on that interface.
struct Attachment {
    GroupId group;
    Role role = Role::Detached;
    Ipv4Addr addr;
};

struct NodeState {
    NodeId id;
    std::string name;
    int intent = 7; // GO negotiation intent, [0, 15]
    std::optional<Attachment> wlan;
    std::optional<Attachment> p2p;

    const std::optional<Attachment>& attachment(InterfaceKind k) const {
        return k == InterfaceKind::Wlan ? wlan : p2p;
    }
    std::optional<Attachment>& attachment(InterfaceKind k) {
        return k == InterfaceKind::Wlan ? wlan : p2p;
    }

    // Role held in `g`, Detached if not a participant.
    Role role_in(GroupId g) const;
    bool attached_anywhere() const { return wlan.has_value() || p2p.has_value(); }
};

// Strict 1:N topology: one owner plus a flat member set. There are no
// client-client link records; client traffic crosses the GO.
struct Group {
    GroupId id;
    NodeId owner;
    std::vector<std::pair<NodeId, Role>> members; // GM or LC only
    bool persistent = true;
    std::string ssid;
    int scope_index = 0; // subnet selector under the non-stock stack

    bool has_member(NodeId n) const;
    Role member_role(NodeId n) const; // Detached if absent
    size_t size_with_owner() const { return members.size() + 1; }
};

enum class FormationMode { Standard, Persistent, Autonomous };

// Remembered group for persistent (invitation-based) re-formation.
struct PersistentRecord {
    NodeId owner;
    std::vector<std::pair<NodeId, Role>> members;
    std::string ssid;
    std::set<NodeId> credentialed;
};

class World {
  public:
    explicit World(Stack stack, uint64_t seed) : stack_(stack), seed_(seed) {}

    NodeId add_node(std::string name, int intent = 7);

    NodeState& node(NodeId id);
    const NodeState& node(NodeId id) const;
    Group& group(GroupId id);
    const Group& group(GroupId id) const;
    bool has_group(GroupId id) const;

    const std::map<uint32_t, NodeState>& nodes() const { return nodes_; }
    const std::map<uint32_t, Group>& groups() const { return groups_; }

    Stack stack() const { return stack_; }
    uint64_t seed() const { return seed_; }

    // Registers a new live group; allocates its id and address scope index.
    Group& create_group(NodeId owner, std::string ssid, bool persistent = true);

    // Tears the group down, detaching the owner and every member.
    void dissolve_group(GroupId id);

    // Attachment bookkeeping. Roles map to interfaces: GO/GM -> P2p,
    // LC -> Wlan. Throws if the interface already carries an attachment.
    void attach(NodeId n, GroupId g, Role role, Ipv4Addr addr);
    void detach(NodeId n, InterfaceKind k);

    // Persistent credentials.
    void remember_group(const Group& g);
    bool has_credentials(NodeId n, const std::string& ssid) const;
    const PersistentRecord* record_for(const std::string& ssid) const;

  private:
    Stack stack_;
    uint64_t seed_;
    uint32_t next_node_ = 1;
    uint32_t next_group_ = 1;
    int next_scope_ = 0;
    std::map<uint32_t, NodeState> nodes_;
    std::map<uint32_t, Group> groups_;
    std::map<std::string, PersistentRecord> records_;
};

enum class NegotiationWinner { A, B };

// Highest intent wins; ties resolved by the explicit tie-breaker bit.
NegotiationWinner negotiate_go(IntentValue intent_a, IntentValue intent_b, bool tie_breaker_a);

struct FormationResult {
    GroupId group;
    std::vector<CostSample> costs;
};

// Runs one of the three formation procedures and returns the new live
// group plus the cost phases consumed.
//  - Standard: GO negotiation (by intent), WPS provisioning, address
//    assignment; requires a responder.
//  - Persistent: invitation + address assignment against a stored record;
//    requires credentials for both sides.
//  - Autonomous: initiator declares itself GO with zero clients.
FormationResult form_group(World& world, FormationMode mode, NodeId initiator,
                           std::optional<NodeId> responder, const CostParams& params,
                           uint64_t key, const std::string& ssid);

// Adds `node` to `group` as a legacy client.
void join_as_lc(World& world, GroupId group, NodeId node);

// Gateway scenario description: the gateway's role in each of the two
// groups, the far-end peer's role, and how the two attachments are held.
struct GatewayConfig {
    Role role_in_a = Role::Gm;
    Role role_in_b = Role::Gm;
    Role peer_a_role = Role::Go;
    Role peer_b_role = Role::Go;
    AttachMode mode = AttachMode::TimeSharing;
    Stack stack = Stack::Stock;

    auto operator<=>(const GatewayConfig&) const = default;
    std::string label() const; // e.g. "GO-LC/GM-GO:Simultaneous:Stock"
};

// nullopt = valid; otherwise the violated rule.
std::optional<std::string> validate_config(const GatewayConfig& cfg);

} // namespace wdsim

#endif
