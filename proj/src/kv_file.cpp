#include "kv_file.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "hybridmem/errors.hpp"

namespace hybridmem::detail {

namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view blank = " \t\r\n\v\f";
    auto first = s.find_first_not_of(blank);
    if (first == std::string_view::npos)
        return {};
    return s.substr(first, s.find_last_not_of(blank) - first + 1);
}

}  // namespace

std::vector<KeyValue> read_key_values(std::istream& in) {
    std::vector<KeyValue> out;
    std::set<std::string, std::less<>> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
        if (!seen.insert(key).second)
            throw ConfigError(key, "duplicate key on line " + std::to_string(line_no));
        out.push_back({std::move(key), std::move(value), line_no});
    }
    if (in.bad())
        throw ConfigError("", "read failure");
    return out;
}

double parse_double(std::string_view key, std::string_view value) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || value.empty() || !std::isfinite(v))
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(value) + "'");
    return v;
}

std::uint64_t parse_count(std::string_view key, std::string_view value) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
        throw ConfigError(std::string(key),
                          "expected a non-negative integer, got '" + std::string(value) + "'");
    return v;
}

std::uint64_t parse_threshold(std::string_view key, std::string_view value) {
    if (value == "inf")
        return std::numeric_limits<std::uint64_t>::max();
    return parse_count(key, value);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_threshold(std::uint64_t v) {
    return v == std::numeric_limits<std::uint64_t>::max() ? "inf" : std::to_string(v);
}

}  // namespace hybridmem::detail
