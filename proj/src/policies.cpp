#include "hybridmem/policies.hpp"

#include <string>

#include "hybridmem/errors.hpp"

namespace hybridmem {

// --- SingleTierLru -----------------------------------------------------------

SingleTierLru::SingleTierLru(Tier tier, std::uint64_t capacity) : tier_(tier), queue_(capacity) {}

void SingleTierLru::on_access(const MemoryAccess& access, EventBatch& out) {
    const PageId page = access.page;
    if (queue_.contains(page)) {
        queue_.touch(page);
        out.push_back(tier_ == Tier::Dram ? hit_dram(access.op, page) : hit_nvm(access.op, page));
        return;
    }
    out.push_back(tier_ == Tier::Dram ? fault_to_dram(page) : fault_to_nvm(page));
    if (queue_.full())
        out.push_back(evict_to_disk(queue_.evict()));
    queue_.insert_front(page);
}

Capacities SingleTierLru::tiers() const noexcept {
    if (tier_ == Tier::Dram)
        return {queue_.capacity(), 0};
    return {0, queue_.capacity()};
}

Occupancy SingleTierLru::occupancy() const {
    if (tier_ == Tier::Dram)
        return {queue_.size(), 0};
    return {0, queue_.size()};
}

// --- ClockRing ---------------------------------------------------------------

ClockRing::ClockRing(std::uint64_t capacity) : capacity_(capacity) {
    if (capacity_ == 0 || capacity_ >= kNil)
        throw QueueError("clock capacity must be in [1, 2^32 - 1)");
    nodes_.reserve(capacity_);
    index_.reserve(capacity_);
}

ClockSlot* ClockRing::find(PageId page) {
    auto it = index_.find(page);
    return it == index_.end() ? nullptr : &nodes_[it->second].slot;
}

void ClockRing::insert(PageId page, bool referenced, std::uint64_t write_freq) {
    if (contains(page))
        throw QueueError("page " + std::to_string(page) + " is already in the clock");
    if (full())
        throw QueueError("insert into a full clock");
    std::uint32_t idx;
    if (!free_.empty()) {
        idx = free_.back();
        free_.pop_back();
    } else {
        idx = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
    }
    Node& n = nodes_[idx];
    n.slot = {page, referenced, write_freq};
    if (hand_ == kNil) {
        n.prev = n.next = idx;
        hand_ = idx;
    } else {
        std::uint32_t behind = nodes_[hand_].prev;
        n.prev = behind;
        n.next = hand_;
        nodes_[behind].next = idx;
        nodes_[hand_].prev = idx;
    }
    index_.emplace(page, idx);
}

void ClockRing::erase(std::uint32_t idx) {
    Node& n = nodes_[idx];
    if (n.next == idx) {
        hand_ = kNil;
    } else {
        if (hand_ == idx)
            hand_ = n.next;
        nodes_[n.prev].next = n.next;
        nodes_[n.next].prev = n.prev;
    }
    index_.erase(n.slot.page);
    free_.push_back(idx);
}

void ClockRing::remove(PageId page) {
    auto it = index_.find(page);
    if (it == index_.end())
        throw QueueError("page " + std::to_string(page) + " is not in the clock");
    erase(it->second);
}

void ClockRing::clear() {
    nodes_.clear();
    free_.clear();
    index_.clear();
    hand_ = kNil;
}

PageId ClockRing::evict_clock() {
    if (empty())
        throw QueueError("evict from an empty clock");
    for (;;) {
        ClockSlot& slot = nodes_[hand_].slot;
        if (!slot.referenced) {
            PageId victim = slot.page;
            erase(hand_);
            return victim;
        }
        slot.referenced = false;
        hand_ = nodes_[hand_].next;
    }
}

PageId ClockRing::evict_read_dominant() {
    if (empty())
        throw QueueError("evict from an empty clock");
    std::uint64_t examined = 0;
    for (;;) {
        ClockSlot& slot = nodes_[hand_].slot;
        if (slot.referenced) {
            slot.referenced = false;
        } else if (slot.write_freq == 0) {
            PageId victim = slot.page;
            erase(hand_);
            return victim;
        }
        hand_ = nodes_[hand_].next;
        if (++examined == size()) {
            for (auto& [page, idx] : index_)
                nodes_[idx].slot.write_freq /= 2;
            examined = 0;
        }
    }
}

std::vector<ClockSlot> ClockRing::slots() const {
    std::vector<ClockSlot> out;
    out.reserve(size());
    if (hand_ == kNil)
        return out;
    auto idx = hand_;
    do {
        out.push_back(nodes_[idx].slot);
        idx = nodes_[idx].next;
    } while (idx != hand_);
    return out;
}

// --- ClockDwf ----------------------------------------------------------------

ClockDwf::ClockDwf(const Capacities& caps) : caps_(caps), dram_(caps.dram_pages), nvm_(caps.nvm_pages) {}

void ClockDwf::reset() {
    dram_.clear();
    nvm_.clear();
}

void ClockDwf::place_in_nvm(PageId page, EventBatch& out) {
    if (nvm_.full())
        out.push_back(evict_to_disk(nvm_.evict_clock()));
    nvm_.insert(page, true, 0);
}

void ClockDwf::make_room_in_dram(EventBatch& out) {
    if (!dram_.full())
        return;
    PageId victim = dram_.evict_read_dominant();
    out.push_back(migrate_to_nvm(victim));
    place_in_nvm(victim, out);
}

void ClockDwf::on_access(const MemoryAccess& access, EventBatch& out) {
    const PageId page = access.page;
    const bool write = access.op == Op::Write;

    if (ClockSlot* slot = dram_.find(page)) {
        slot->referenced = true;
        if (write)
            ++slot->write_freq;
        out.push_back(hit_dram(access.op, page));
        return;
    }

    if (ClockSlot* slot = nvm_.find(page)) {
        if (!write) {
            slot->referenced = true;
            out.push_back(hit_nvm(Op::Read, page));
            return;
        }
        nvm_.remove(page);
        out.push_back(migrate_to_dram(page));
        make_room_in_dram(out);
        dram_.insert(page, true, 1);
        out.push_back(hit_dram(Op::Write, page));
        return;
    }

    if (write || !dram_.full()) {
        out.push_back(fault_to_dram(page));
        make_room_in_dram(out);
        dram_.insert(page, true, write ? 1 : 0);
    } else {
        out.push_back(fault_to_nvm(page));
        place_in_nvm(page, out);
    }
}

// --- TwoLru ------------------------------------------------------------------

TwoLru::TwoLru(const Capacities& caps, const PolicyParams& params)
    : caps_(caps),
      params_(params),
      dram_(caps.dram_pages),
      nvm_(caps.nvm_pages, params.read_region(caps.nvm_pages), params.write_region(caps.nvm_pages)) {}

void TwoLru::reset() {
    dram_.clear();
    nvm_.clear();
}

// Updates the NVM counters for a hit and reports whether the page is now hot
// enough to migrate.
bool TwoLru::count_nvm_hit(Op op, PageId page) {
    const TouchResult before = nvm_.touch(page);
    if (op == Op::Read) {
        std::uint64_t c = before.in_read_region ? nvm_.read_counter(page) + 1 : 1;
        nvm_.set_read_counter(page, c);
        return c > params_.read_threshold;
    }
    std::uint64_t c = before.in_write_region ? nvm_.write_counter(page) + 1 : 1;
    nvm_.set_write_counter(page, c);
    return c > params_.write_threshold;
}

void TwoLru::demote_dram_lru(EventBatch& out) {
    PageId victim = dram_.evict();
    out.push_back(migrate_to_nvm(victim));
    if (nvm_.full())
        out.push_back(evict_to_disk(nvm_.evict()));
    nvm_.insert_front(victim);
}

void TwoLru::on_access(const MemoryAccess& access, EventBatch& out) {
    const PageId page = access.page;

    if (dram_.contains(page)) {
        dram_.touch(page);
        out.push_back(hit_dram(access.op, page));
        return;
    }

    if (nvm_.contains(page)) {
        if (!count_nvm_hit(access.op, page)) {
            out.push_back(hit_nvm(access.op, page));
            return;
        }
        nvm_.remove(page);
        out.push_back(migrate_to_dram(page));
        if (dram_.full())
            demote_dram_lru(out);
        dram_.insert_front(page);
        out.push_back(hit_dram(access.op, page));
        return;
    }

    out.push_back(fault_to_dram(page));
    if (dram_.full())
        demote_dram_lru(out);
    dram_.insert_front(page);
}

// --- factory -----------------------------------------------------------------

std::unique_ptr<Policy> make_policy(PolicyKind kind, const Capacities& caps, const PolicyParams& params) {
    switch (kind) {
    case PolicyKind::DramLru: return std::make_unique<SingleTierLru>(Tier::Dram, caps.total());
    case PolicyKind::NvmLru: return std::make_unique<SingleTierLru>(Tier::Nvm, caps.total());
    case PolicyKind::ClockDwf: return std::make_unique<ClockDwf>(caps);
    case PolicyKind::TwoLru:
        params.validate();
        return std::make_unique<TwoLru>(caps, params);
    }
    throw ConfigError("policy", "unhandled policy kind");
}

}  // namespace hybridmem
