#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hybridmem/trace.hpp"

namespace hybridmem {

struct QueueEntry {
    PageId page = 0;
    std::uint64_t read_counter = 0;
    std::uint64_t write_counter = 0;

    bool operator==(const QueueEntry&) const = default;
};

// Which counter regions a page occupied before it was touched.
struct TouchResult {
    bool in_read_region = false;
    bool in_write_region = false;
};

// Recency queue, most recent first, with per-page read/write counters that are
// only kept for the top `read_region` / `write_region` positions. A page pushed
// past a region's last position has that region's counter reset to zero.
//
// Region membership is tracked with a cursor on the last in-region entry, so
// touch, insert_front, remove and evict are O(1) expected time.
class LruQueue {
  public:
    explicit LruQueue(std::uint64_t capacity, std::uint64_t read_region = 0,
                      std::uint64_t write_region = 0);

    std::uint64_t capacity() const noexcept { return capacity_; }
    std::uint64_t size() const noexcept { return index_.size(); }
    bool empty() const noexcept { return index_.empty(); }
    bool full() const noexcept { return size() >= capacity_; }
    bool contains(PageId page) const { return index_.count(page) != 0; }

    std::uint64_t read_region() const noexcept { return regions_[kRead].size; }
    std::uint64_t write_region() const noexcept { return regions_[kWrite].size; }

    // Moves `page` to the front. Throws QueueError if absent.
    TouchResult touch(PageId page);
    // Throws QueueError if `page` is present or the queue is full.
    void insert_front(PageId page);
    // Removes and returns the least recent page. Throws QueueError if empty.
    PageId evict();
    // Throws QueueError if absent.
    void remove(PageId page);
    void clear();

    PageId least_recent() const;

    std::uint64_t read_counter(PageId page) const;
    std::uint64_t write_counter(PageId page) const;
    // Throw QueueError unless `page` lies inside the matching region.
    void set_read_counter(PageId page, std::uint64_t value);
    void set_write_counter(PageId page, std::uint64_t value);

    // O(n) views for tests and diagnostics.
    std::vector<QueueEntry> entries() const;
    std::optional<std::uint64_t> rank_of(PageId page) const;
    // Full scan of the linkage, cursors and counter-region rule; throws QueueError.
    void check_invariants() const;

  private:
    static constexpr std::uint32_t kNil = UINT32_MAX;
    static constexpr int kRead = 0;
    static constexpr int kWrite = 1;

    struct Node {
        PageId page = 0;
        std::uint32_t prev = kNil;
        std::uint32_t next = kNil;
        std::uint64_t counter[2] = {0, 0};
        bool in_region[2] = {false, false};
    };

    struct Region {
        std::uint64_t size = 0;
        std::uint64_t count = 0;        // min(size, queue length)
        std::uint32_t last = kNil;      // last entry inside the region
    };

    std::uint32_t slot_of(PageId page) const;
    std::uint32_t allocate(PageId page);
    void unlink(std::uint32_t idx);
    void link_front(std::uint32_t idx);
    void push_out_last(int r);
    void set_counter(int r, PageId page, std::uint64_t value);

    std::uint64_t capacity_;
    Region regions_[2];
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> free_;
    std::unordered_map<PageId, std::uint32_t> index_;
    std::uint32_t head_ = kNil;
    std::uint32_t tail_ = kNil;
};

}  // namespace hybridmem
