#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hybridmem/trace.hpp"

namespace hybridmem {

// Every costed action a policy can take. Each processed access yields exactly
// one Hit* or Fault* event; migrations and disk evictions only ever appear in
// the batch of the access that caused them.
//
// Batches are ordered cause-first:
//   hit                      Hit*
//   fault                    Fault*, [MigrateDramToNvm], [EvictToDisk]
//   hit that migrates page   MigrateNvmToDram, [MigrateDramToNvm], HitDram
enum class EventKind : std::uint8_t {
    HitDram,
    HitNvm,
    FaultToDram,
    FaultToNvm,
    MigrateNvmToDram,
    MigrateDramToNvm,
    EvictToDisk,
};

struct SimEvent {
    EventKind kind = EventKind::HitDram;
    Op op = Op::Read;  // only meaningful for hits
    PageId page = 0;   // page served, faulted, migrated or evicted

    bool operator==(const SimEvent&) const = default;
};

using EventBatch = std::vector<SimEvent>;

constexpr bool is_hit(EventKind k) noexcept { return k == EventKind::HitDram || k == EventKind::HitNvm; }
constexpr bool is_fault(EventKind k) noexcept {
    return k == EventKind::FaultToDram || k == EventKind::FaultToNvm;
}

constexpr SimEvent hit_dram(Op op, PageId p) noexcept { return {EventKind::HitDram, op, p}; }
constexpr SimEvent hit_nvm(Op op, PageId p) noexcept { return {EventKind::HitNvm, op, p}; }
constexpr SimEvent fault_to_dram(PageId p) noexcept { return {EventKind::FaultToDram, Op::Read, p}; }
constexpr SimEvent fault_to_nvm(PageId p) noexcept { return {EventKind::FaultToNvm, Op::Read, p}; }
constexpr SimEvent migrate_to_dram(PageId p) noexcept { return {EventKind::MigrateNvmToDram, Op::Read, p}; }
constexpr SimEvent migrate_to_nvm(PageId p) noexcept { return {EventKind::MigrateDramToNvm, Op::Read, p}; }
constexpr SimEvent evict_to_disk(PageId p) noexcept { return {EventKind::EvictToDisk, Op::Read, p}; }

std::string to_string(EventKind kind);
std::string to_string(const SimEvent& event);

}  // namespace hybridmem
