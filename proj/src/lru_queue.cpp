#include "hybridmem/lru_queue.hpp"

#include <algorithm>
#include <string>

#include "hybridmem/errors.hpp"

namespace hybridmem {

LruQueue::LruQueue(std::uint64_t capacity, std::uint64_t read_region, std::uint64_t write_region)
    : capacity_(capacity) {
    if (capacity_ == 0 || capacity_ >= kNil)
        throw QueueError("queue capacity must be in [1, 2^32 - 1)");
    regions_[kRead].size = std::min(read_region, capacity_);
    regions_[kWrite].size = std::min(write_region, capacity_);
    nodes_.reserve(capacity_);
    index_.reserve(capacity_);
}

std::uint32_t LruQueue::slot_of(PageId page) const {
    auto it = index_.find(page);
    if (it == index_.end())
        throw QueueError("page " + std::to_string(page) + " is not in the queue");
    return it->second;
}

std::uint32_t LruQueue::allocate(PageId page) {
    std::uint32_t idx;
    if (!free_.empty()) {
        idx = free_.back();
        free_.pop_back();
        nodes_[idx] = Node{};
    } else {
        idx = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
    }
    nodes_[idx].page = page;
    index_.emplace(page, idx);
    return idx;
}

void LruQueue::unlink(std::uint32_t idx) {
    Node& n = nodes_[idx];
    if (n.prev != kNil)
        nodes_[n.prev].next = n.next;
    else
        head_ = n.next;
    if (n.next != kNil)
        nodes_[n.next].prev = n.prev;
    else
        tail_ = n.prev;
    n.prev = n.next = kNil;
}

void LruQueue::link_front(std::uint32_t idx) {
    Node& n = nodes_[idx];
    n.prev = kNil;
    n.next = head_;
    if (head_ != kNil)
        nodes_[head_].prev = idx;
    head_ = idx;
    if (tail_ == kNil)
        tail_ = idx;
}

// The region's last entry has just been shifted one position back, out of the
// region. Call after the new entry is linked in front.
void LruQueue::push_out_last(int r) {
    Region& region = regions_[r];
    Node& pushed = nodes_[region.last];
    pushed.in_region[r] = false;
    pushed.counter[r] = 0;
    region.last = pushed.prev;
}

TouchResult LruQueue::touch(PageId page) {
    const std::uint32_t idx = slot_of(page);
    Node& n = nodes_[idx];
    TouchResult result{n.in_region[kRead], n.in_region[kWrite]};
    if (idx == head_)
        return result;

    for (int r : {kRead, kWrite}) {
        Region& region = regions_[r];
        if (region.size != 0 && n.in_region[r] && region.last == idx)
            region.last = n.prev;
    }
    unlink(idx);
    link_front(idx);
    for (int r : {kRead, kWrite}) {
        if (regions_[r].size != 0 && !n.in_region[r]) {
            push_out_last(r);
            n.in_region[r] = true;
        }
    }
    return result;
}

void LruQueue::insert_front(PageId page) {
    if (contains(page))
        throw QueueError("page " + std::to_string(page) + " is already in the queue");
    if (full())
        throw QueueError("insert into a full queue");
    const std::uint32_t idx = allocate(page);
    link_front(idx);
    for (int r : {kRead, kWrite}) {
        Region& region = regions_[r];
        if (region.size == 0)
            continue;
        if (region.count < region.size) {
            // Region not yet full: every queued entry is inside it.
            ++region.count;
            if (region.last == kNil)
                region.last = idx;
        } else {
            push_out_last(r);
        }
        nodes_[idx].in_region[r] = true;
    }
}

void LruQueue::remove(PageId page) {
    const std::uint32_t idx = slot_of(page);
    const Node& n = nodes_[idx];
    for (int r : {kRead, kWrite}) {
        Region& region = regions_[r];
        if (region.size == 0 || !n.in_region[r])
            continue;
        // The first entry behind the region moves up into it.
        std::uint32_t entering = region.last == idx ? n.next : nodes_[region.last].next;
        if (entering != kNil) {
            nodes_[entering].in_region[r] = true;
            region.last = entering;
        } else {
            --region.count;
            if (region.last == idx)
                region.last = n.prev;
        }
    }
    unlink(idx);
    index_.erase(page);
    free_.push_back(idx);
}

PageId LruQueue::evict() {
    if (empty())
        throw QueueError("evict from an empty queue");
    PageId victim = nodes_[tail_].page;
    remove(victim);
    return victim;
}

void LruQueue::clear() {
    nodes_.clear();
    free_.clear();
    index_.clear();
    head_ = tail_ = kNil;
    for (auto& region : regions_) {
        region.count = 0;
        region.last = kNil;
    }
}

PageId LruQueue::least_recent() const {
    if (empty())
        throw QueueError("empty queue has no least recent page");
    return nodes_[tail_].page;
}

std::uint64_t LruQueue::read_counter(PageId page) const { return nodes_[slot_of(page)].counter[kRead]; }

std::uint64_t LruQueue::write_counter(PageId page) const { return nodes_[slot_of(page)].counter[kWrite]; }

void LruQueue::set_counter(int r, PageId page, std::uint64_t value) {
    Node& n = nodes_[slot_of(page)];
    if (!n.in_region[r])
        throw QueueError("counter update for page " + std::to_string(page) + " outside its region");
    n.counter[r] = value;
}

void LruQueue::set_read_counter(PageId page, std::uint64_t value) { set_counter(kRead, page, value); }

void LruQueue::set_write_counter(PageId page, std::uint64_t value) { set_counter(kWrite, page, value); }

std::vector<QueueEntry> LruQueue::entries() const {
    std::vector<QueueEntry> out;
    out.reserve(size());
    for (auto idx = head_; idx != kNil; idx = nodes_[idx].next)
        out.push_back({nodes_[idx].page, nodes_[idx].counter[kRead], nodes_[idx].counter[kWrite]});
    return out;
}

std::optional<std::uint64_t> LruQueue::rank_of(PageId page) const {
    std::uint64_t rank = 0;
    for (auto idx = head_; idx != kNil; idx = nodes_[idx].next, ++rank)
        if (nodes_[idx].page == page)
            return rank;
    return std::nullopt;
}

void LruQueue::check_invariants() const {
    auto fail = [](const std::string& what) { throw QueueError("invariant violated: " + what); };
    if (size() > capacity_)
        fail("length exceeds capacity");
    std::uint64_t rank = 0;
    std::uint32_t prev = kNil;
    std::uint32_t last_in[2] = {kNil, kNil};
    for (auto idx = head_; idx != kNil; prev = idx, idx = nodes_[idx].next, ++rank) {
        const Node& n = nodes_[idx];
        if (n.prev != prev)
            fail("broken back link");
        auto it = index_.find(n.page);
        if (it == index_.end() || it->second != idx)
            fail("index out of sync");
        for (int r : {kRead, kWrite}) {
            bool inside = rank < regions_[r].size;
            if (n.in_region[r] != inside)
                fail("region flag disagrees with rank");
            if (!inside && n.counter[r] != 0)
                fail("non-zero counter outside its region");
            if (inside)
                last_in[r] = idx;
        }
    }
    if (rank != size() || tail_ != prev)
        fail("list length or tail mismatch");
    for (int r : {kRead, kWrite}) {
        if (regions_[r].size == 0)
            continue;
        if (regions_[r].last != last_in[r])
            fail("region cursor misplaced");
        if (regions_[r].count != std::min(regions_[r].size, size()))
            fail("region count mismatch");
    }
}

}  // namespace hybridmem
