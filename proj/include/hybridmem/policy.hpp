#pragma once

#include <memory>
#include <string_view>

#include "hybridmem/config.hpp"
#include "hybridmem/events.hpp"
#include "hybridmem/trace.hpp"

namespace hybridmem {

struct Occupancy {
    std::uint64_t dram_pages = 0;
    std::uint64_t nvm_pages = 0;
};

// A page placement policy over a DRAM tier, an NVM tier and an unbounded disk.
// Implementations are deterministic and single-threaded.
class Policy {
  public:
    virtual ~Policy() = default;

    // Appends the events caused by `access` to `out`.
    virtual void on_access(const MemoryAccess& access, EventBatch& out) = 0;
    virtual void reset() = 0;

    virtual PolicyKind kind() const noexcept = 0;
    std::string_view name() const noexcept { return policy_name(kind()); }

    // Tier sizes the policy actually uses. Single-tier policies put the whole
    // memory in one tier and report zero for the other.
    virtual Capacities tiers() const noexcept = 0;
    virtual Occupancy occupancy() const = 0;
};

// Single-tier policies get `caps.total()` pages in their tier.
std::unique_ptr<Policy> make_policy(PolicyKind kind, const Capacities& caps,
                                    const PolicyParams& params = {});

}  // namespace hybridmem
