#pragma once

// Access-trace data model and the plain-text trace format.
//
// One access per line:
//
//     R 0x7f001000
//     W 4096
//     # comment
//
// The op token is exactly `R` or `W`. The address is hex with a `0x`/`0X`
// prefix or unsigned decimal, and must fit in 64 bits. Leading and trailing
// blanks are ignored, as are blank lines and lines whose first non-blank
// character is `#`. Anything else on the line is an error.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace hybridmem {

using PageId = std::uint64_t;

inline constexpr std::uint64_t kDefaultPageSize = 4096;

enum class Op : std::uint8_t { Read, Write };

constexpr char op_letter(Op op) noexcept { return op == Op::Read ? 'R' : 'W'; }

constexpr PageId page_of(std::uint64_t address, std::uint64_t page_size) noexcept {
    return address / page_size;
}

struct MemoryAccess {
    Op op = Op::Read;
    std::uint64_t address = 0;
    PageId page = 0;

    static MemoryAccess make(Op op, std::uint64_t address, std::uint64_t page_size) {
        return {op, address, page_of(address, page_size)};
    }

    bool operator==(const MemoryAccess&) const = default;
};

// Decodes one trace line. Returns nullopt for blank and comment lines.
// Throws TraceParseError tagged with `line_no`.
std::optional<MemoryAccess> parse_trace_line(std::string_view line, std::uint64_t page_size,
                                             std::size_t line_no = 0);

// Pull-style reader over a stream of trace lines. Memory use is bounded by the
// number of distinct pages, not the trace length.
class TraceReader {
  public:
    TraceReader(std::istream& in, std::uint64_t page_size);

    std::optional<MemoryAccess> next();

    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t distinct_pages() const noexcept { return pages_.size(); }
    std::size_t line_number() const noexcept { return line_no_; }

  private:
    std::istream& in_;
    std::uint64_t page_size_;
    std::uint64_t count_ = 0;
    std::size_t line_no_ = 0;
    std::unordered_set<PageId> pages_;
};

struct TraceSummary {
    std::uint64_t accesses = 0;
    std::uint64_t distinct_pages = 0;
};

// Streams every access of `in` through `sink` in file order.
TraceSummary stream_trace(std::istream& in, std::uint64_t page_size,
                          const std::function<void(const MemoryAccess&)>& sink);

std::vector<MemoryAccess> read_trace(std::istream& in, std::uint64_t page_size);

void write_trace_line(std::ostream& out, const MemoryAccess& access);
void write_trace(std::ostream& out, std::span<const MemoryAccess> accesses);

}  // namespace hybridmem
