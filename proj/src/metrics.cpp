#include "hybridmem/metrics.hpp"

#include <string>

#include "hybridmem/errors.hpp"

namespace hybridmem {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void require_requests(const EventCounters& c) {
    if (c.n_total == 0)
        throw UndefinedMetricError("metric undefined over zero requests");
}

double tier_latency(const TierParams& t, Op op) { return op == Op::Read ? t.t_read_ns : t.t_write_ns; }

}  // namespace

void EventCounters::validate() const {
    if (n_hit_dram_read + n_hit_dram_write + n_hit_nvm_read + n_hit_nvm_write + n_miss != n_total)
        throw AccountingError("hits plus misses do not add up to the request count");
    if (n_fault_to_dram + n_fault_to_nvm != n_miss)
        throw AccountingError("faults do not add up to the miss count");
}

EventCounters& EventCounters::operator+=(const EventCounters& o) {
    n_total += o.n_total;
    n_hit_dram_read += o.n_hit_dram_read;
    n_hit_dram_write += o.n_hit_dram_write;
    n_hit_nvm_read += o.n_hit_nvm_read;
    n_hit_nvm_write += o.n_hit_nvm_write;
    n_miss += o.n_miss;
    n_fault_to_dram += o.n_fault_to_dram;
    n_fault_to_nvm += o.n_fault_to_nvm;
    n_mig_nvm_to_dram += o.n_mig_nvm_to_dram;
    n_mig_dram_to_nvm += o.n_mig_dram_to_nvm;
    n_evict_to_disk += o.n_evict_to_disk;
    return *this;
}

EventCounters operator+(EventCounters a, const EventCounters& b) { return a += b; }

void accumulate(EventCounters& counters, std::span<const SimEvent> events) {
    EventCounters delta;
    int primary = 0;
    for (const auto& e : events) {
        switch (e.kind) {
        case EventKind::HitDram:
            ++primary;
            ++(e.op == Op::Read ? delta.n_hit_dram_read : delta.n_hit_dram_write);
            break;
        case EventKind::HitNvm:
            ++primary;
            ++(e.op == Op::Read ? delta.n_hit_nvm_read : delta.n_hit_nvm_write);
            break;
        case EventKind::FaultToDram:
            ++primary;
            ++delta.n_miss;
            ++delta.n_fault_to_dram;
            break;
        case EventKind::FaultToNvm:
            ++primary;
            ++delta.n_miss;
            ++delta.n_fault_to_nvm;
            break;
        case EventKind::MigrateNvmToDram: ++delta.n_mig_nvm_to_dram; break;
        case EventKind::MigrateDramToNvm: ++delta.n_mig_dram_to_nvm; break;
        case EventKind::EvictToDisk: ++delta.n_evict_to_disk; break;
        }
    }
    if (primary != 1)
        throw AccountingError("access produced " + std::to_string(primary) +
                              " hit/fault events, expected exactly one");
    delta.n_total = 1;
    counters += delta;
}

double event_latency_ns(const SimEvent& e, const DeviceParams& d, std::uint64_t page_factor) {
    const double pf = static_cast<double>(page_factor);
    switch (e.kind) {
    case EventKind::HitDram: return tier_latency(d.dram, e.op);
    case EventKind::HitNvm: return tier_latency(d.nvm, e.op);
    case EventKind::FaultToDram:
    case EventKind::FaultToNvm: return d.t_disk_ns;
    case EventKind::MigrateNvmToDram: return pf * (d.nvm.t_read_ns + d.dram.t_write_ns);
    case EventKind::MigrateDramToNvm: return pf * (d.dram.t_read_ns + d.nvm.t_write_ns);
    case EventKind::EvictToDisk: return 0.0;
    }
    return 0.0;
}

void SimClock::advance(std::span<const SimEvent> events, const DeviceParams& device, std::uint64_t page_factor) {
    for (const auto& e : events)
        total_ns_ += event_latency_ns(e, device, page_factor);
}

AmatBreakdown compute_amat(const EventCounters& c, const DeviceParams& d, std::uint64_t page_factor) {
    require_requests(c);
    const double pf = static_cast<double>(page_factor);
    const std::uint64_t dram_hits = c.n_hit_dram_read + c.n_hit_dram_write;
    const std::uint64_t nvm_hits = c.n_hit_nvm_read + c.n_hit_nvm_write;

    const double p_hit_dram = ratio(dram_hits, c.n_total);
    const double p_hit_nvm = ratio(nvm_hits, c.n_total);
    const double p_r_dram = ratio(c.n_hit_dram_read, dram_hits);
    const double p_w_dram = ratio(c.n_hit_dram_write, dram_hits);
    const double p_r_nvm = ratio(c.n_hit_nvm_read, nvm_hits);
    const double p_w_nvm = ratio(c.n_hit_nvm_write, nvm_hits);

    AmatBreakdown a;
    a.hit_dram = p_hit_dram * (p_r_dram * d.dram.t_read_ns + p_w_dram * d.dram.t_write_ns);
    a.hit_nvm = p_hit_nvm * (p_r_nvm * d.nvm.t_read_ns + p_w_nvm * d.nvm.t_write_ns);
    a.miss = ratio(c.n_miss, c.n_total) * d.t_disk_ns;
    a.mig_to_dram = ratio(c.n_mig_nvm_to_dram, c.n_total) * pf * (d.nvm.t_read_ns + d.dram.t_write_ns);
    a.mig_to_nvm = ratio(c.n_mig_dram_to_nvm, c.n_total) * pf * (d.dram.t_read_ns + d.nvm.t_write_ns);
    return a;
}

ApprBreakdown compute_appr_dynamic(const EventCounters& c, const DeviceParams& d, std::uint64_t page_factor) {
    require_requests(c);
    const double pf = static_cast<double>(page_factor);
    const std::uint64_t dram_hits = c.n_hit_dram_read + c.n_hit_dram_write;
    const std::uint64_t nvm_hits = c.n_hit_nvm_read + c.n_hit_nvm_write;

    const double p_hit_dram = ratio(dram_hits, c.n_total);
    const double p_hit_nvm = ratio(nvm_hits, c.n_total);
    const double p_miss = ratio(c.n_miss, c.n_total);
    const double p_disk_to_dram = ratio(c.n_fault_to_dram, c.n_miss);
    const double p_disk_to_nvm = ratio(c.n_fault_to_nvm, c.n_miss);

    ApprBreakdown a;
    a.hit_dram = p_hit_dram * (ratio(c.n_hit_dram_read, dram_hits) * d.dram.e_read_nj +
                               ratio(c.n_hit_dram_write, dram_hits) * d.dram.e_write_nj);
    a.hit_nvm = p_hit_nvm * (ratio(c.n_hit_nvm_read, nvm_hits) * d.nvm.e_read_nj +
                             ratio(c.n_hit_nvm_write, nvm_hits) * d.nvm.e_write_nj);
    a.fault_to_dram = p_miss * p_disk_to_dram * pf * d.dram.e_write_nj;
    a.fault_to_nvm = p_miss * p_disk_to_nvm * pf * d.nvm.e_write_nj;
    a.mig_to_dram = ratio(c.n_mig_nvm_to_dram, c.n_total) * pf * (d.nvm.e_read_nj + d.dram.e_write_nj);
    a.mig_to_nvm = ratio(c.n_mig_dram_to_nvm, c.n_total) * pf * (d.dram.e_read_nj + d.nvm.e_write_nj);
    return a;
}

double compute_static_power(const Capacities& tiers, const DeviceParams& d, std::uint64_t page_size,
                            const EventCounters& c, const SimClock& clock,
                            std::optional<double> requests_per_second) {
    require_requests(c);
    const double bytes = static_cast<double>(page_size);
    const double dram_gb = static_cast<double>(tiers.dram_pages) * bytes / kBytesPerGb;
    const double nvm_gb = static_cast<double>(tiers.nvm_pages) * bytes / kBytesPerGb;
    const double watts = dram_gb * d.dram.static_w_per_gb + nvm_gb * d.nvm.static_w_per_gb;

    const double seconds = requests_per_second ? static_cast<double>(c.n_total) / *requests_per_second
                                               : clock.elapsed_seconds();
    if (!(seconds > 0))
        throw UndefinedMetricError("static power undefined over zero elapsed time");
    return watts * seconds * 1e9 / static_cast<double>(c.n_total);
}

NvmWrites nvm_write_breakdown(const EventCounters& c, std::uint64_t page_factor) {
    return {c.n_hit_nvm_write, page_factor * c.n_mig_dram_to_nvm, page_factor * c.n_fault_to_nvm};
}

}  // namespace hybridmem
