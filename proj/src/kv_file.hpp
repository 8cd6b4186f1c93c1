#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace hybridmem::detail {

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

// `key = value` lines; `#` to end of line is a comment. Throws ConfigError on
// lines without `=` and on repeated keys.
std::vector<KeyValue> read_key_values(std::istream& in);

double parse_double(std::string_view key, std::string_view value);
std::uint64_t parse_count(std::string_view key, std::string_view value);
// Like parse_count, but `inf` maps to UINT64_MAX.
std::uint64_t parse_threshold(std::string_view key, std::string_view value);

std::string format_double(double v);
std::string format_threshold(std::uint64_t v);

}  // namespace hybridmem::detail
