#include "equivalence.hpp"

#include <cmath>
#include <random>

#include "hybridmem/policy.hpp"
#include "hybridmem/synthetic.hpp"

namespace hybridmem::testing {

RandomCase make_random_case(std::uint64_t seed, PolicyKind policy, std::uint64_t max_accesses,
                            std::uint64_t max_capacity) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 1);
    auto between = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    RandomCase c;
    c.policy = policy;
    const std::uint64_t total = between(2, max_capacity);
    c.caps.dram_pages = between(1, total - 1);
    c.caps.nvm_pages = total - c.caps.dram_pages;

    c.params.readperc = 0.05 + 0.6 * unit();
    c.params.writeperc = c.params.readperc + (1.0 - c.params.readperc) * unit();
    c.params.read_threshold = between(1, 6);
    c.params.write_threshold = between(1, 10);
    if (rng() % 8 == 0)
        c.params.read_threshold = kNeverMigrate;
    if (rng() % 8 == 0)
        c.params.write_threshold = kNeverMigrate;

    SyntheticSpec spec;
    spec.n_accesses = between(1, max_accesses);
    spec.n_pages = between(1, total * 2 + 4);
    spec.hot_fraction = 0.05 + 0.95 * unit();
    spec.hot_access_fraction = unit() < 0.2 ? 1.0 : 0.3 + 0.7 * unit();
    spec.read_ratio = unit();
    spec.seed = rng();
    c.trace = generate_synthetic(spec);
    return c;
}

oracle::OracleParams oracle_params(const RandomCase& c) {
    oracle::OracleParams p;
    p.policy = c.policy;
    p.dram_pages = c.caps.dram_pages;
    p.nvm_pages = c.caps.nvm_pages;
    p.readperc = c.params.readperc;
    p.writeperc = c.params.writeperc;
    p.read_threshold = c.params.read_threshold;
    p.write_threshold = c.params.write_threshold;
    return p;
}

bool close_rel(double a, double b, double rel) {
    if (a == b)
        return true;
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

namespace {

std::string describe(const RandomCase& c) {
    return std::string(policy_name(c.policy)) + " dram=" + std::to_string(c.caps.dram_pages) +
           " nvm=" + std::to_string(c.caps.nvm_pages) + " accesses=" + std::to_string(c.trace.size());
}

}  // namespace

EquivalenceResult check_equivalence(const RandomCase& c, const DeviceParams& device, std::uint64_t page_factor) {
    EquivalenceResult r;
    auto policy = make_policy(c.policy, c.caps, c.params);
    auto reference = oracle::oracle_simulate(c.trace, oracle_params(c));

    EventCounters counters;
    SimClock clock;
    double energy = 0;
    EventBatch batch;
    for (std::size_t i = 0; i < c.trace.size(); ++i) {
        batch.clear();
        policy->on_access(c.trace[i], batch);
        if (r.events && batch != reference.log[i]) {
            r.events = false;
            r.detail = describe(c) + ": event batch differs at access " + std::to_string(i);
        }
        accumulate(counters, batch);
        clock.advance(batch, device, page_factor);
        for (const auto& e : batch) {
            // energy per event, priced the same way as the closed form terms
            const double pf = static_cast<double>(page_factor);
            switch (e.kind) {
            case EventKind::HitDram: energy += e.op == Op::Read ? device.dram.e_read_nj : device.dram.e_write_nj; break;
            case EventKind::HitNvm: energy += e.op == Op::Read ? device.nvm.e_read_nj : device.nvm.e_write_nj; break;
            case EventKind::FaultToDram: energy += pf * device.dram.e_write_nj; break;
            case EventKind::FaultToNvm: energy += pf * device.nvm.e_write_nj; break;
            case EventKind::MigrateNvmToDram: energy += pf * (device.nvm.e_read_nj + device.dram.e_write_nj); break;
            case EventKind::MigrateDramToNvm: energy += pf * (device.dram.e_read_nj + device.nvm.e_write_nj); break;
            case EventKind::EvictToDisk: break;
            }
        }
    }

    if (!(counters == reference.counters)) {
        r.counters = false;
        if (r.detail.empty())
            r.detail = describe(c) + ": counters differ";
    }

    const double amat = compute_amat(counters, device, page_factor).total();
    const double appr = compute_appr_dynamic(counters, device, page_factor).total();
    const auto ref = oracle::oracle_accumulate_costs(reference.log, device, page_factor);
    if (!close_rel(amat, ref.amat_ns) || !close_rel(appr, ref.appr_nj)) {
        r.metrics = false;
        if (r.detail.empty())
            r.detail = describe(c) + ": metrics differ from the oracle";
    }

    const double n = static_cast<double>(counters.n_total);
    if (!close_rel(amat, clock.total_request_time_ns() / n) || !close_rel(appr, energy / n)) {
        r.closed_form = false;
        if (r.detail.empty())
            r.detail = describe(c) + ": closed forms differ from event accumulation";
    }
    return r;
}

}  // namespace hybridmem::testing
