#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "hybridmem/trace.hpp"

namespace hybridmem {

// Hot/cold page-access workload. Page ids [0, hot_pages()) form the hot set.
struct SyntheticSpec {
    std::uint64_t n_accesses = 0;
    std::uint64_t n_pages = 0;
    double hot_fraction = 1.0;
    double hot_access_fraction = 1.0;
    double read_ratio = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t page_size = kDefaultPageSize;

    std::uint64_t hot_pages() const;
    // Throws ConfigError naming the offending field.
    void validate() const;

    bool operator==(const SyntheticSpec&) const = default;
};

// Reads `key = value` lines (same syntax as the simulator config).
SyntheticSpec parse_synthetic_spec(std::istream& in);
SyntheticSpec load_synthetic_spec(const std::string& path);
std::string to_spec_text(const SyntheticSpec& spec);

// Streaming generator: identical spec and seed give an identical sequence.
class SyntheticTrace {
  public:
    explicit SyntheticTrace(const SyntheticSpec& spec);

    bool done() const noexcept { return emitted_ >= spec_.n_accesses; }
    MemoryAccess next();

  private:
    double unit();
    std::uint64_t below(std::uint64_t bound);

    SyntheticSpec spec_;
    std::uint64_t hot_pages_;
    std::uint64_t emitted_ = 0;
    std::mt19937_64 rng_;
};

std::vector<MemoryAccess> generate_synthetic(const SyntheticSpec& spec);

}  // namespace hybridmem
