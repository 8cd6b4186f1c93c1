#include "hybridmem/trace.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "hybridmem/errors.hpp"

namespace hybridmem {

namespace {

constexpr std::string_view kBlank = " \t\r\n\v\f";

std::string_view trim(std::string_view s) {
    auto first = s.find_first_not_of(kBlank);
    if (first == std::string_view::npos)
        return {};
    auto last = s.find_last_not_of(kBlank);
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_address(std::string_view tok, std::size_t line_no) {
    int base = 10;
    if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) {
        tok.remove_prefix(2);
        base = 16;
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value, base);
    if (ec == std::errc::result_out_of_range)
        throw TraceParseError(line_no, "address exceeds 64 bits");
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
        throw TraceParseError(line_no, "unparseable address '" + std::string(tok) + "'");
    return value;
}

}  // namespace

std::optional<MemoryAccess> parse_trace_line(std::string_view line, std::uint64_t page_size,
                                             std::size_t line_no) {
    line = trim(line);
    if (line.empty() || line.front() == '#')
        return std::nullopt;

    auto split = line.find_first_of(kBlank);
    std::string_view op_tok = line.substr(0, split);
    Op op;
    if (op_tok == "R")
        op = Op::Read;
    else if (op_tok == "W")
        op = Op::Write;
    else
        throw TraceParseError(line_no, "unknown op '" + std::string(op_tok) + "'");

    if (split == std::string_view::npos)
        throw TraceParseError(line_no, "missing address");
    std::string_view rest = trim(line.substr(split));
    if (rest.find_first_of(kBlank) != std::string_view::npos)
        throw TraceParseError(line_no, "trailing characters after address");

    return MemoryAccess::make(op, parse_address(rest, line_no), page_size);
}

TraceReader::TraceReader(std::istream& in, std::uint64_t page_size)
    : in_(in), page_size_(page_size) {
    if (page_size_ == 0)
        throw ConfigError("page_size", "must be positive");
}

std::optional<MemoryAccess> TraceReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (auto access = parse_trace_line(line, page_size_, line_no_)) {
            ++count_;
            pages_.insert(access->page);
            return access;
        }
    }
    if (in_.bad())
        throw TraceIoError(count_, "read failure at line " + std::to_string(line_no_ + 1));
    return std::nullopt;
}

TraceSummary stream_trace(std::istream& in, std::uint64_t page_size,
                          const std::function<void(const MemoryAccess&)>& sink) {
    TraceReader reader(in, page_size);
    while (auto access = reader.next())
        sink(*access);
    return {reader.count(), reader.distinct_pages()};
}

std::vector<MemoryAccess> read_trace(std::istream& in, std::uint64_t page_size) {
    std::vector<MemoryAccess> out;
    stream_trace(in, page_size, [&](const MemoryAccess& a) { out.push_back(a); });
    return out;
}

void write_trace_line(std::ostream& out, const MemoryAccess& access) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, access.address, 16);
    out << op_letter(access.op) << " 0x" << std::string_view(buf, end - buf) << '\n';
}

void write_trace(std::ostream& out, std::span<const MemoryAccess> accesses) {
    for (const auto& a : accesses)
        write_trace_line(out, a);
}

}  // namespace hybridmem
