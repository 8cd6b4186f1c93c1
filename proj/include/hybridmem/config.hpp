#pragma once

// Device characteristics, memory layout sizing and migration-policy knobs.
//
// Config files are flat `key = value` text, one entry per line, `#` starts a
// comment. Unknown keys are rejected. Keys and defaults:
//
//   policy                  two_lru       dram_lru | nvm_lru | clock_dwf | two_lru
//   dram.t_read_ns          50            read latency (ns)
//   dram.t_write_ns         50            write latency (ns)
//   dram.e_read_nj          3.2           energy per read (nJ)
//   dram.e_write_nj         3.2           energy per write (nJ)
//   dram.static_w_per_gb    1             static power, J/(GB*s)
//   nvm.t_read_ns           100
//   nvm.t_write_ns          350
//   nvm.e_read_nj           6.4
//   nvm.e_write_nj          32
//   nvm.static_w_per_gb     0.1
//   disk.t_access_ns        5000000       page fault service time (ns)
//   page_size               4096          bytes
//   mem_fraction            0.75          memory pages / distinct trace pages
//   dram_fraction           0.10          DRAM pages / memory pages
//   page_factor             64            memory transactions per page move
//   dram_pages              (derived)     explicit DRAM capacity override
//   nvm_pages               (derived)     explicit NVM capacity override
//   readperc                0.2           read-counter region, fraction of NVM
//   writeperc               0.4           write-counter region, fraction of NVM
//   read_threshold          4             count, or `inf`
//   write_threshold         8             count, or `inf`
//   requests_per_second     (unset)       fixed request rate for static power
//   warmup_frac             0             leading trace fraction excluded from metrics
//
// GB means 2^30 bytes.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace hybridmem {

struct TierParams {
    double t_read_ns = 0;
    double t_write_ns = 0;
    double e_read_nj = 0;
    double e_write_nj = 0;
    double static_w_per_gb = 0;

    bool operator==(const TierParams&) const = default;
};

struct DeviceParams {
    TierParams dram{50.0, 50.0, 3.2, 3.2, 1.0};
    TierParams nvm{100.0, 350.0, 6.4, 32.0, 0.1};
    double t_disk_ns = 5.0e6;

    void validate() const;
    bool operator==(const DeviceParams&) const = default;
};

struct LayoutConfig {
    std::uint64_t page_size = 4096;
    double mem_fraction = 0.75;
    double dram_fraction = 0.10;
    std::uint64_t page_factor = 64;
    std::optional<std::uint64_t> dram_pages;
    std::optional<std::uint64_t> nvm_pages;

    void validate() const;
    bool operator==(const LayoutConfig&) const = default;
};

inline constexpr std::uint64_t kNeverMigrate = std::numeric_limits<std::uint64_t>::max();

struct PolicyParams {
    double readperc = 0.2;
    double writeperc = 0.4;
    std::uint64_t read_threshold = 4;
    std::uint64_t write_threshold = 8;

    // Number of top NVM queue positions that keep read/write counters.
    std::uint64_t read_region(std::uint64_t nvm_capacity) const;
    std::uint64_t write_region(std::uint64_t nvm_capacity) const;

    void validate() const;
    bool operator==(const PolicyParams&) const = default;
};

enum class PolicyKind { DramLru, NvmLru, ClockDwf, TwoLru };

std::string_view policy_name(PolicyKind kind) noexcept;
// Throws ConfigError for unknown names.
PolicyKind parse_policy_name(std::string_view name);

struct SimConfig {
    PolicyKind policy = PolicyKind::TwoLru;
    DeviceParams device;
    LayoutConfig layout;
    PolicyParams params;
    std::optional<double> requests_per_second;
    double warmup_frac = 0.0;

    void validate() const;
    bool operator==(const SimConfig&) const = default;
};

SimConfig parse_config(std::istream& in);
SimConfig parse_config_text(std::string_view text);
SimConfig load_config(const std::string& path);

// Sets one key as if it appeared in a config file. Does not re-validate.
void apply_config_key(SimConfig& config, std::string_view key, std::string_view value);

// Every key with its resolved value; parse_config() reproduces the input.
std::string to_config_text(const SimConfig& config);

struct Capacities {
    std::uint64_t dram_pages = 0;
    std::uint64_t nvm_pages = 0;

    std::uint64_t total() const noexcept { return dram_pages + nvm_pages; }
    bool operator==(const Capacities&) const = default;
};

// ceil(fraction * n), treating products within 1e-9 of an integer as that
// integer so 0.1 * 750 sizes to 75 rather than 76.
std::uint64_t ceil_fraction(double fraction, std::uint64_t n);

// total = max(2, ceil(mem_fraction * distinct)); dram = max(1, ceil(dram_fraction
// * total)); nvm = total - dram. Explicit overrides replace the derived value.
Capacities derive_capacities(std::uint64_t distinct_pages, const LayoutConfig& layout);

}  // namespace hybridmem
