#include "wdsim/types.hpp"

#include <cstdio>

namespace wdsim {

const char* to_string(Role r) {
    switch (r) {
        case Role::Go: return "GO";
        case Role::Gm: return "GM";
        case Role::Lc: return "LC";
        case Role::Detached: return "Detached";
    }
    return "?";
}

const char* to_string(InterfaceKind k) {
    return k == InterfaceKind::Wlan ? "wlan" : "p2p";
}

const char* to_string(Stack s) {
    return s == Stack::Stock ? "Stock" : "NonStock";
}

const char* to_string(AttachMode m) {
    return m == AttachMode::TimeSharing ? "TimeSharing" : "Simultaneous";
}

std::string Ipv4Addr::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", octets[0], octets[1], octets[2], octets[3]);
    return buf;
}

} // namespace wdsim
