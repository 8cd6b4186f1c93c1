#pragma once

// Event tallies and the closed-form cost models evaluated over them:
// average memory access time, dynamic energy per request, prorated static
// energy per request and NVM write counts. Probabilities are count ratios
// over the measured requests.

#include <cstdint>
#include <optional>
#include <span>

#include "hybridmem/config.hpp"
#include "hybridmem/events.hpp"

namespace hybridmem {

struct EventCounters {
    std::uint64_t n_total = 0;
    std::uint64_t n_hit_dram_read = 0;
    std::uint64_t n_hit_dram_write = 0;
    std::uint64_t n_hit_nvm_read = 0;
    std::uint64_t n_hit_nvm_write = 0;
    std::uint64_t n_miss = 0;
    std::uint64_t n_fault_to_dram = 0;
    std::uint64_t n_fault_to_nvm = 0;
    std::uint64_t n_mig_nvm_to_dram = 0;
    std::uint64_t n_mig_dram_to_nvm = 0;
    std::uint64_t n_evict_to_disk = 0;

    // Throws AccountingError if hits + misses != total or faults != misses.
    void validate() const;

    EventCounters& operator+=(const EventCounters& other);
    bool operator==(const EventCounters&) const = default;
};

EventCounters operator+(EventCounters a, const EventCounters& b);

// Adds the event batch of one access. Throws AccountingError, leaving
// `counters` untouched, unless the batch holds exactly one hit or fault.
void accumulate(EventCounters& counters, std::span<const SimEvent> events);

// Latency charged to a single event.
double event_latency_ns(const SimEvent& event, const DeviceParams& device, std::uint64_t page_factor);

// Busy time of the memory system: the sum of per-event latencies.
class SimClock {
  public:
    void advance(std::span<const SimEvent> events, const DeviceParams& device, std::uint64_t page_factor);
    double total_request_time_ns() const noexcept { return total_ns_; }
    double elapsed_seconds() const noexcept { return total_ns_ * 1e-9; }

  private:
    double total_ns_ = 0;
};

struct AmatBreakdown {
    double hit_dram = 0;
    double hit_nvm = 0;
    double miss = 0;
    double mig_to_dram = 0;
    double mig_to_nvm = 0;

    double total() const noexcept { return hit_dram + hit_nvm + miss + mig_to_dram + mig_to_nvm; }
};

struct ApprBreakdown {
    double hit_dram = 0;
    double hit_nvm = 0;
    double fault_to_dram = 0;
    double fault_to_nvm = 0;
    double mig_to_dram = 0;
    double mig_to_nvm = 0;

    double total() const noexcept {
        return hit_dram + hit_nvm + fault_to_dram + fault_to_nvm + mig_to_dram + mig_to_nvm;
    }
};

struct NvmWrites {
    std::uint64_t requests = 0;
    std::uint64_t migrations = 0;
    std::uint64_t faults = 0;

    std::uint64_t total() const noexcept { return requests + migrations + faults; }
    bool operator==(const NvmWrites&) const = default;
};

// Faults are charged the disk latency only; the page copy into memory overlaps
// with the disk transfer. Migrations cost page_factor * (read src + write dst).
// Throws UndefinedMetricError when n_total == 0.
AmatBreakdown compute_amat(const EventCounters& c, const DeviceParams& device, std::uint64_t page_factor);

// Faults are charged page_factor writes into the destination tier; disk
// energy is not modelled. Throws UndefinedMetricError when n_total == 0.
ApprBreakdown compute_appr_dynamic(const EventCounters& c, const DeviceParams& device,
                                   std::uint64_t page_factor);

inline constexpr double kBytesPerGb = 1024.0 * 1024.0 * 1024.0;

// Static energy per request in nJ: (dram_GB * static_dram + nvm_GB * static_nvm)
// watts over the run's elapsed time, divided by the number of requests.
// Elapsed time is clock.elapsed_seconds(), or n_total / requests_per_second
// when a fixed rate is given. Throws UndefinedMetricError for zero requests or
// zero elapsed time.
double compute_static_power(const Capacities& tiers, const DeviceParams& device, std::uint64_t page_size,
                            const EventCounters& c, const SimClock& clock,
                            std::optional<double> requests_per_second = std::nullopt);

NvmWrites nvm_write_breakdown(const EventCounters& c, std::uint64_t page_factor);

}  // namespace hybridmem
