#include "hybridmem/events.hpp"

namespace hybridmem {

std::string to_string(EventKind kind) {
    switch (kind) {
    case EventKind::HitDram: return "HitDram";
    case EventKind::HitNvm: return "HitNvm";
    case EventKind::FaultToDram: return "FaultToDram";
    case EventKind::FaultToNvm: return "FaultToNvm";
    case EventKind::MigrateNvmToDram: return "MigrateNvmToDram";
    case EventKind::MigrateDramToNvm: return "MigrateDramToNvm";
    case EventKind::EvictToDisk: return "EvictToDisk";
    }
    return "?";
}

std::string to_string(const SimEvent& event) {
    std::string out = to_string(event.kind);
    if (is_hit(event.kind)) {
        out += '(';
        out += op_letter(event.op);
        out += ')';
    }
    return out + " page " + std::to_string(event.page);
}

}  // namespace hybridmem
