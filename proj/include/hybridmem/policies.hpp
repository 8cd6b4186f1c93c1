#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hybridmem/lru_queue.hpp"
#include "hybridmem/policy.hpp"

namespace hybridmem {

enum class Tier : std::uint8_t { Dram, Nvm };

// Plain LRU over one tier; the DRAM-only and NVM-only baselines.
class SingleTierLru final : public Policy {
  public:
    SingleTierLru(Tier tier, std::uint64_t capacity);

    void on_access(const MemoryAccess& access, EventBatch& out) override;
    void reset() override { queue_.clear(); }
    PolicyKind kind() const noexcept override {
        return tier_ == Tier::Dram ? PolicyKind::DramLru : PolicyKind::NvmLru;
    }
    Capacities tiers() const noexcept override;
    Occupancy occupancy() const override;

    const LruQueue& queue() const noexcept { return queue_; }

  private:
    Tier tier_;
    LruQueue queue_;
};

struct ClockSlot {
    PageId page = 0;
    bool referenced = false;
    std::uint64_t write_freq = 0;

    bool operator==(const ClockSlot&) const = default;
};

// Circular page list with a clock hand. New pages are linked just behind the
// hand, so they are the last ones the hand reaches.
class ClockRing {
  public:
    explicit ClockRing(std::uint64_t capacity);

    std::uint64_t capacity() const noexcept { return capacity_; }
    std::uint64_t size() const noexcept { return index_.size(); }
    bool empty() const noexcept { return index_.empty(); }
    bool full() const noexcept { return size() >= capacity_; }
    bool contains(PageId page) const { return index_.count(page) != 0; }

    // nullptr when absent.
    ClockSlot* find(PageId page);

    void insert(PageId page, bool referenced, std::uint64_t write_freq);
    void remove(PageId page);
    void clear();

    // Second-chance victim: referenced pages lose their bit and are skipped.
    // Removes and returns the victim. Ring must be non-empty.
    PageId evict_clock();

    // Like evict_clock, but only pages with write_freq == 0 qualify. After a
    // full revolution without a victim every write_freq is halved.
    PageId evict_read_dominant();

    // Slots in hand order, starting at the hand.
    std::vector<ClockSlot> slots() const;

  private:
    static constexpr std::uint32_t kNil = UINT32_MAX;

    struct Node {
        ClockSlot slot;
        std::uint32_t prev = kNil;
        std::uint32_t next = kNil;
    };

    void erase(std::uint32_t idx);

    std::uint64_t capacity_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> free_;
    std::unordered_map<PageId, std::uint32_t> index_;
    std::uint32_t hand_ = kNil;
};

// CLOCK-DWF: one clock per tier. Write faults fill DRAM and read faults fill
// NVM, except that every fault goes to DRAM while DRAM has free frames. A write
// that hits NVM moves the page to DRAM first, so NVM never serves a write.
// DRAM victims are chosen by evict_read_dominant() and demoted to NVM.
class ClockDwf final : public Policy {
  public:
    explicit ClockDwf(const Capacities& caps);

    void on_access(const MemoryAccess& access, EventBatch& out) override;
    void reset() override;
    PolicyKind kind() const noexcept override { return PolicyKind::ClockDwf; }
    Capacities tiers() const noexcept override { return caps_; }
    Occupancy occupancy() const override { return {dram_.size(), nvm_.size()}; }

    const ClockRing& dram() const noexcept { return dram_; }
    const ClockRing& nvm() const noexcept { return nvm_; }

  private:
    void make_room_in_dram(EventBatch& out);
    void place_in_nvm(PageId page, EventBatch& out);

    Capacities caps_;
    ClockRing dram_;
    ClockRing nvm_;
};

// Two LRU queues. Faults always fill DRAM and push the DRAM LRU page to the
// front of the NVM queue. The NVM queue keeps read/write counters for its top
// readperc/writeperc positions; a page whose counter for the current request
// type exceeds the matching threshold migrates to DRAM.
class TwoLru final : public Policy {
  public:
    TwoLru(const Capacities& caps, const PolicyParams& params);

    void on_access(const MemoryAccess& access, EventBatch& out) override;
    void reset() override;
    PolicyKind kind() const noexcept override { return PolicyKind::TwoLru; }
    Capacities tiers() const noexcept override { return caps_; }
    Occupancy occupancy() const override { return {dram_.size(), nvm_.size()}; }

    const LruQueue& dram() const noexcept { return dram_; }
    const LruQueue& nvm() const noexcept { return nvm_; }

  private:
    bool count_nvm_hit(Op op, PageId page);
    void demote_dram_lru(EventBatch& out);

    Capacities caps_;
    PolicyParams params_;
    LruQueue dram_;
    LruQueue nvm_;
};

}  // namespace hybridmem
