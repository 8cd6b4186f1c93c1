#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hybridmem/config.hpp"
#include "hybridmem/metrics.hpp"

namespace hybridmem {

struct RunReport {
    std::string run_id;
    std::string trace;
    SimConfig config;           // resolved; config.policy is the policy that ran
    Capacities capacities;      // hybrid sizing derived from the trace
    Capacities tiers;           // tier sizes the policy used
    std::uint64_t trace_accesses = 0;
    std::uint64_t distinct_pages = 0;
    std::uint64_t warmup_accesses = 0;

    EventCounters counters;
    double total_request_time_ns = 0;
    AmatBreakdown amat;
    ApprBreakdown appr;
    double static_nj_per_req = 0;
    NvmWrites nvm_writes;
    // NVM-only baseline writes divided by this run's writes (NVM lifetime gain).
    std::optional<double> lifetime_ratio;

    double total_power_nj() const noexcept { return appr.total() + static_nj_per_req; }
    double static_share() const noexcept { return static_nj_per_req / total_power_nj(); }
};

// Reports that normalized values are expressed against. Null when absent.
struct Baselines {
    const RunReport* dram_only = nullptr;
    const RunReport* nvm_only = nullptr;
    const RunReport* clock_dwf = nullptr;
};

struct Comparison {
    std::string run_id;
    std::string policy;
    std::optional<double> power_vs_dram_only;
    std::optional<double> amat_vs_dram_only;
    std::optional<double> amat_vs_clock_dwf;
    std::optional<double> nvm_writes_vs_nvm_only;
};

// value / baseline, or nullopt when there is no baseline or it is zero.
std::optional<double> normalized(double value, double baseline);

Comparison compare_run(const RunReport& run, const Baselines& baselines);

// Reported numbers carry six significant digits.
std::string format_value(double v);
double round_to_6_digits(double v);

nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const Comparison& comparison);

// CSV layout, one row per (metric, component) plus one per normalization:
//   run_id,policy,trace,metric,component,value,normalized_to,normalized_value
// metric is amat_ns, appr_nj, static_nj_per_req or nvm_writes; component
// `total` carries the sum. Power rows (appr_nj, static_nj_per_req) are divided
// by the DRAM-only baseline's total power (dynamic + static), so the normalized
// components stack to the normalized total power. amat_ns rows are divided by
// the DRAM-only and CLOCK-DWF baseline AMAT; nvm_writes rows by the NVM-only
// baseline's total NVM writes.
std::string csv_header();
std::vector<std::string> csv_rows(const RunReport& report, const Baselines& baselines);

}  // namespace hybridmem
