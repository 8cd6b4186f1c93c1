#include "hybridmem/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "hybridmem/errors.hpp"
#include "kv_file.hpp"

namespace hybridmem {

using detail::format_double;
using detail::format_threshold;
using detail::parse_count;
using detail::parse_double;
using detail::parse_threshold;

namespace {

void require(bool ok, const char* key, const char* what) {
    if (!ok)
        throw ConfigError(key, what);
}

void validate_tier(const TierParams& t, const std::string& prefix) {
    auto positive = [&](double v, const char* field) {
        if (!(v > 0))
            throw ConfigError(prefix + field, "must be strictly positive");
    };
    positive(t.t_read_ns, ".t_read_ns");
    positive(t.t_write_ns, ".t_write_ns");
    positive(t.e_read_nj, ".e_read_nj");
    positive(t.e_write_nj, ".e_write_nj");
    if (!(t.static_w_per_gb >= 0))
        throw ConfigError(prefix + ".static_w_per_gb", "must be non-negative");
}

struct KeySpec {
    std::string_view name;
    std::function<void(SimConfig&, std::string_view key, std::string_view value)> set;
    // nullopt: key is unset and omitted from the echo.
    std::function<std::optional<std::string>(const SimConfig&)> get;
};

template <typename Member>
KeySpec double_key(std::string_view name, Member member) {
    return {name,
            [member](SimConfig& c, std::string_view k, std::string_view v) {
                std::invoke(member, c) = parse_double(k, v);
            },
            [member](const SimConfig& c) -> std::optional<std::string> {
                return format_double(std::invoke(member, c));
            }};
}

template <typename Member>
KeySpec count_key(std::string_view name, Member member) {
    return {name,
            [member](SimConfig& c, std::string_view k, std::string_view v) {
                std::invoke(member, c) = parse_count(k, v);
            },
            [member](const SimConfig& c) -> std::optional<std::string> {
                return std::to_string(std::invoke(member, c));
            }};
}

template <typename Member>
KeySpec threshold_key(std::string_view name, Member member) {
    return {name,
            [member](SimConfig& c, std::string_view k, std::string_view v) {
                std::invoke(member, c) = parse_threshold(k, v);
            },
            [member](const SimConfig& c) -> std::optional<std::string> {
                return format_threshold(std::invoke(member, c));
            }};
}

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = [] {
        std::vector<KeySpec> t;
        t.push_back({"policy",
                     [](SimConfig& c, std::string_view, std::string_view v) {
                         c.policy = parse_policy_name(v);
                     },
                     [](const SimConfig& c) -> std::optional<std::string> {
                         return std::string(policy_name(c.policy));
                     }});
        t.push_back(double_key("dram.t_read_ns", [](auto& c) -> auto& { return c.device.dram.t_read_ns; }));
        t.push_back(double_key("dram.t_write_ns", [](auto& c) -> auto& { return c.device.dram.t_write_ns; }));
        t.push_back(double_key("dram.e_read_nj", [](auto& c) -> auto& { return c.device.dram.e_read_nj; }));
        t.push_back(double_key("dram.e_write_nj", [](auto& c) -> auto& { return c.device.dram.e_write_nj; }));
        t.push_back(double_key("dram.static_w_per_gb", [](auto& c) -> auto& { return c.device.dram.static_w_per_gb; }));
        t.push_back(double_key("nvm.t_read_ns", [](auto& c) -> auto& { return c.device.nvm.t_read_ns; }));
        t.push_back(double_key("nvm.t_write_ns", [](auto& c) -> auto& { return c.device.nvm.t_write_ns; }));
        t.push_back(double_key("nvm.e_read_nj", [](auto& c) -> auto& { return c.device.nvm.e_read_nj; }));
        t.push_back(double_key("nvm.e_write_nj", [](auto& c) -> auto& { return c.device.nvm.e_write_nj; }));
        t.push_back(double_key("nvm.static_w_per_gb", [](auto& c) -> auto& { return c.device.nvm.static_w_per_gb; }));
        t.push_back(double_key("disk.t_access_ns", [](auto& c) -> auto& { return c.device.t_disk_ns; }));
        t.push_back(count_key("page_size", [](auto& c) -> auto& { return c.layout.page_size; }));
        t.push_back(double_key("mem_fraction", [](auto& c) -> auto& { return c.layout.mem_fraction; }));
        t.push_back(double_key("dram_fraction", [](auto& c) -> auto& { return c.layout.dram_fraction; }));
        t.push_back(count_key("page_factor", [](auto& c) -> auto& { return c.layout.page_factor; }));
        t.push_back({"dram_pages",
                     [](SimConfig& c, std::string_view k, std::string_view v) {
                         c.layout.dram_pages = parse_count(k, v);
                     },
                     [](const SimConfig& c) -> std::optional<std::string> {
                         if (!c.layout.dram_pages)
                             return std::nullopt;
                         return std::to_string(*c.layout.dram_pages);
                     }});
        t.push_back({"nvm_pages",
                     [](SimConfig& c, std::string_view k, std::string_view v) {
                         c.layout.nvm_pages = parse_count(k, v);
                     },
                     [](const SimConfig& c) -> std::optional<std::string> {
                         if (!c.layout.nvm_pages)
                             return std::nullopt;
                         return std::to_string(*c.layout.nvm_pages);
                     }});
        t.push_back(double_key("readperc", [](auto& c) -> auto& { return c.params.readperc; }));
        t.push_back(double_key("writeperc", [](auto& c) -> auto& { return c.params.writeperc; }));
        t.push_back(threshold_key("read_threshold", [](auto& c) -> auto& { return c.params.read_threshold; }));
        t.push_back(threshold_key("write_threshold", [](auto& c) -> auto& { return c.params.write_threshold; }));
        t.push_back({"requests_per_second",
                     [](SimConfig& c, std::string_view k, std::string_view v) {
                         c.requests_per_second = parse_double(k, v);
                     },
                     [](const SimConfig& c) -> std::optional<std::string> {
                         if (!c.requests_per_second)
                             return std::nullopt;
                         return format_double(*c.requests_per_second);
                     }});
        t.push_back(double_key("warmup_frac", [](auto& c) -> auto& { return c.warmup_frac; }));
        return t;
    }();
    return table;
}

}  // namespace

void DeviceParams::validate() const {
    validate_tier(dram, "dram");
    validate_tier(nvm, "nvm");
    double slowest = std::max({dram.t_read_ns, dram.t_write_ns, nvm.t_read_ns, nvm.t_write_ns});
    if (!(t_disk_ns >= slowest))
        throw ConfigError("disk.t_access_ns", "must be at least the slowest memory latency");
}

void LayoutConfig::validate() const {
    require(page_size >= 1, "page_size", "must be positive");
    require(mem_fraction > 0 && mem_fraction <= 1, "mem_fraction", "must be in (0, 1]");
    require(dram_fraction > 0 && dram_fraction < 1, "dram_fraction", "must be in (0, 1)");
    require(page_factor >= 1, "page_factor", "must be at least 1");
    require(!dram_pages || *dram_pages >= 1, "dram_pages", "must be at least 1");
    require(!nvm_pages || *nvm_pages >= 1, "nvm_pages", "must be at least 1");
}

std::uint64_t PolicyParams::read_region(std::uint64_t nvm_capacity) const {
    return ceil_fraction(readperc, nvm_capacity);
}

std::uint64_t PolicyParams::write_region(std::uint64_t nvm_capacity) const {
    return ceil_fraction(writeperc, nvm_capacity);
}

void PolicyParams::validate() const {
    require(readperc > 0 && readperc <= 1, "readperc", "must be in (0, 1]");
    require(writeperc > 0 && writeperc <= 1, "writeperc", "must be in (0, 1]");
    require(readperc <= writeperc, "writeperc", "must not be smaller than readperc");
    require(read_threshold >= 1, "read_threshold", "must be at least 1");
    require(write_threshold >= 1, "write_threshold", "must be at least 1");
}

std::string_view policy_name(PolicyKind kind) noexcept {
    switch (kind) {
    case PolicyKind::DramLru: return "dram_lru";
    case PolicyKind::NvmLru: return "nvm_lru";
    case PolicyKind::ClockDwf: return "clock_dwf";
    case PolicyKind::TwoLru: return "two_lru";
    }
    return "?";
}

PolicyKind parse_policy_name(std::string_view name) {
    for (auto kind : {PolicyKind::DramLru, PolicyKind::NvmLru, PolicyKind::ClockDwf, PolicyKind::TwoLru})
        if (policy_name(kind) == name)
            return kind;
    throw ConfigError("policy", "unknown policy '" + std::string(name) + "'");
}

void SimConfig::validate() const {
    device.validate();
    layout.validate();
    params.validate();
    if (requests_per_second && !(*requests_per_second > 0))
        throw ConfigError("requests_per_second", "must be strictly positive");
    require(warmup_frac >= 0 && warmup_frac < 1, "warmup_frac", "must be in [0, 1)");
}

void apply_config_key(SimConfig& config, std::string_view key, std::string_view value) {
    for (const auto& spec : key_table()) {
        if (spec.name == key) {
            spec.set(config, key, value);
            return;
        }
    }
    throw ConfigError(std::string(key), "unknown key");
}

SimConfig parse_config(std::istream& in) {
    SimConfig config;
    for (const auto& kv : detail::read_key_values(in))
        apply_config_key(config, kv.key, kv.value);
    config.validate();
    return config;
}

SimConfig parse_config_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string to_config_text(const SimConfig& config) {
    std::string out;
    for (const auto& spec : key_table()) {
        if (auto value = spec.get(config)) {
            out += spec.name;
            out += " = ";
            out += *value;
            out += '\n';
        }
    }
    return out;
}

std::uint64_t ceil_fraction(double fraction, std::uint64_t n) {
    double product = fraction * static_cast<double>(n);
    double nearest = std::round(product);
    if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, nearest))
        return static_cast<std::uint64_t>(nearest);
    return static_cast<std::uint64_t>(std::ceil(product));
}

Capacities derive_capacities(std::uint64_t distinct_pages, const LayoutConfig& layout) {
    if (distinct_pages < 1)
        throw ConfigError("", "cannot size memory for an empty trace");
    std::uint64_t total = std::max<std::uint64_t>(2, ceil_fraction(layout.mem_fraction, distinct_pages));
    Capacities caps;
    caps.dram_pages = layout.dram_pages.value_or(
        std::max<std::uint64_t>(1, ceil_fraction(layout.dram_fraction, total)));
    if (layout.nvm_pages)
        caps.nvm_pages = *layout.nvm_pages;
    else
        caps.nvm_pages = total > caps.dram_pages ? total - caps.dram_pages : 0;
    if (caps.dram_pages < 1 || caps.nvm_pages < 1)
        throw ConfigError(caps.dram_pages < 1 ? "dram_pages" : "nvm_pages",
                          "both memory tiers need at least one page");
    return caps;
}

}  // namespace hybridmem
