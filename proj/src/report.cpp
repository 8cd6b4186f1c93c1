#include "hybridmem/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hybridmem {

std::optional<double> normalized(double value, double baseline) {
    if (baseline == 0.0)
        return std::nullopt;
    return value / baseline;
}

Comparison compare_run(const RunReport& run, const Baselines& b) {
    Comparison c{run.run_id, std::string(policy_name(run.config.policy)), {}, {}, {}, {}};
    if (b.dram_only) {
        c.power_vs_dram_only = normalized(run.total_power_nj(), b.dram_only->total_power_nj());
        c.amat_vs_dram_only = normalized(run.amat.total(), b.dram_only->amat.total());
    }
    if (b.clock_dwf)
        c.amat_vs_clock_dwf = normalized(run.amat.total(), b.clock_dwf->amat.total());
    if (b.nvm_only)
        c.nvm_writes_vs_nvm_only = normalized(static_cast<double>(run.nvm_writes.total()),
                                              static_cast<double>(b.nvm_only->nvm_writes.total()));
    return c;
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double round_to_6_digits(double v) {
    if (!std::isfinite(v))
        return v;
    return std::strtod(format_value(v).c_str(), nullptr);
}

namespace {

using nlohmann::json;

json rounded(double v) { return round_to_6_digits(v); }

json optional_value(const std::optional<double>& v) {
    return v ? rounded(*v) : json(nullptr);
}

json config_json(const RunReport& r) {
    const SimConfig& c = r.config;
    auto tier = [](const TierParams& t) {
        return json{{"t_read_ns", t.t_read_ns},
                    {"t_write_ns", t.t_write_ns},
                    {"e_read_nj", t.e_read_nj},
                    {"e_write_nj", t.e_write_nj},
                    {"static_w_per_gb", t.static_w_per_gb}};
    };
    auto threshold = [](std::uint64_t t) { return t == kNeverMigrate ? json("inf") : json(t); };
    json j;
    j["policy"] = policy_name(c.policy);
    j["dram"] = tier(c.device.dram);
    j["nvm"] = tier(c.device.nvm);
    j["disk_t_access_ns"] = c.device.t_disk_ns;
    j["page_size"] = c.layout.page_size;
    j["mem_fraction"] = c.layout.mem_fraction;
    j["dram_fraction"] = c.layout.dram_fraction;
    j["page_factor"] = c.layout.page_factor;
    j["dram_pages_override"] = c.layout.dram_pages ? json(*c.layout.dram_pages) : json(nullptr);
    j["nvm_pages_override"] = c.layout.nvm_pages ? json(*c.layout.nvm_pages) : json(nullptr);
    j["readperc"] = c.params.readperc;
    j["writeperc"] = c.params.writeperc;
    j["read_threshold"] = threshold(c.params.read_threshold);
    j["write_threshold"] = threshold(c.params.write_threshold);
    j["requests_per_second"] = c.requests_per_second ? json(*c.requests_per_second) : json(nullptr);
    j["warmup_frac"] = c.warmup_frac;
    j["dram_pages"] = r.capacities.dram_pages;
    j["nvm_pages"] = r.capacities.nvm_pages;
    j["tier_dram_pages"] = r.tiers.dram_pages;
    j["tier_nvm_pages"] = r.tiers.nvm_pages;
    return j;
}

}  // namespace

json to_json(const RunReport& r) {
    const EventCounters& c = r.counters;
    json j;
    j["run_id"] = r.run_id;
    j["policy"] = policy_name(r.config.policy);
    j["trace"] = r.trace;
    j["config"] = config_json(r);
    j["trace_accesses"] = r.trace_accesses;
    j["distinct_pages"] = r.distinct_pages;
    j["warmup_accesses"] = r.warmup_accesses;
    j["counters"] = {{"n_total", c.n_total},
                     {"n_hit_dram_read", c.n_hit_dram_read},
                     {"n_hit_dram_write", c.n_hit_dram_write},
                     {"n_hit_nvm_read", c.n_hit_nvm_read},
                     {"n_hit_nvm_write", c.n_hit_nvm_write},
                     {"n_miss", c.n_miss},
                     {"n_fault_to_dram", c.n_fault_to_dram},
                     {"n_fault_to_nvm", c.n_fault_to_nvm},
                     {"n_mig_nvm_to_dram", c.n_mig_nvm_to_dram},
                     {"n_mig_dram_to_nvm", c.n_mig_dram_to_nvm},
                     {"n_evict_to_disk", c.n_evict_to_disk}};
    j["total_request_time_ns"] = rounded(r.total_request_time_ns);
    j["amat_ns"] = {{"total", rounded(r.amat.total())},
                    {"breakdown",
                     {{"hit_dram", rounded(r.amat.hit_dram)},
                      {"hit_nvm", rounded(r.amat.hit_nvm)},
                      {"miss", rounded(r.amat.miss)},
                      {"mig_to_dram", rounded(r.amat.mig_to_dram)},
                      {"mig_to_nvm", rounded(r.amat.mig_to_nvm)}}}};
    j["appr_nj"] = {{"total", rounded(r.appr.total())},
                    {"breakdown",
                     {{"hit_dram", rounded(r.appr.hit_dram)},
                      {"hit_nvm", rounded(r.appr.hit_nvm)},
                      {"fault_to_dram", rounded(r.appr.fault_to_dram)},
                      {"fault_to_nvm", rounded(r.appr.fault_to_nvm)},
                      {"mig_to_dram", rounded(r.appr.mig_to_dram)},
                      {"mig_to_nvm", rounded(r.appr.mig_to_nvm)}}}};
    j["static_nj_per_req"] = rounded(r.static_nj_per_req);
    j["total_power_nj"] = rounded(r.total_power_nj());
    j["static_share"] = rounded(r.static_share());
    j["nvm_writes"] = {{"total", r.nvm_writes.total()},
                       {"breakdown",
                        {{"requests", r.nvm_writes.requests},
                         {"migrations", r.nvm_writes.migrations},
                         {"faults", r.nvm_writes.faults}}}};
    j["lifetime_ratio"] = optional_value(r.lifetime_ratio);
    return j;
}

json to_json(const Comparison& c) {
    return {{"run_id", c.run_id},
            {"policy", c.policy},
            {"power_vs_dram_only", optional_value(c.power_vs_dram_only)},
            {"amat_vs_dram_only", optional_value(c.amat_vs_dram_only)},
            {"amat_vs_clock_dwf", optional_value(c.amat_vs_clock_dwf)},
            {"nvm_writes_vs_nvm_only", optional_value(c.nvm_writes_vs_nvm_only)}};
}

std::string csv_header() {
    return "run_id,policy,trace,metric,component,value,normalized_to,normalized_value";
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + '"';
}

struct Component {
    const char* name;
    double value;
    bool integral = false;
};

}  // namespace

std::vector<std::string> csv_rows(const RunReport& r, const Baselines& b) {
    const std::string prefix = csv_field(r.run_id) + "," + std::string(policy_name(r.config.policy)) + "," +
                               csv_field(r.trace) + ",";
    std::vector<std::string> rows;

    auto emit = [&](const char* metric, const std::vector<Component>& components,
                    std::vector<std::pair<const RunReport*, double>> denominators) {
        for (const auto& comp : components) {
            std::string head = prefix + metric + "," + comp.name + ",";
            std::string value = comp.integral ? std::to_string(static_cast<std::uint64_t>(comp.value))
                                              : format_value(comp.value);
            rows.push_back(head + value + ",,");
            for (const auto& [base, denom] : denominators) {
                if (!base)
                    continue;
                auto norm = normalized(comp.value, denom);
                rows.push_back(head + value + "," + csv_field(base->run_id) + "," +
                               (norm ? format_value(*norm) : std::string()));
            }
        }
    };

    auto power = [](const RunReport* base) { return base ? base->total_power_nj() : 0.0; };
    auto amat = [](const RunReport* base) { return base ? base->amat.total() : 0.0; };

    emit("amat_ns",
         {{"hit_dram", r.amat.hit_dram},
          {"hit_nvm", r.amat.hit_nvm},
          {"miss", r.amat.miss},
          {"mig_to_dram", r.amat.mig_to_dram},
          {"mig_to_nvm", r.amat.mig_to_nvm},
          {"total", r.amat.total()}},
         {{b.dram_only, amat(b.dram_only)}, {b.clock_dwf, amat(b.clock_dwf)}});
    emit("appr_nj",
         {{"hit_dram", r.appr.hit_dram},
          {"hit_nvm", r.appr.hit_nvm},
          {"fault_to_dram", r.appr.fault_to_dram},
          {"fault_to_nvm", r.appr.fault_to_nvm},
          {"mig_to_dram", r.appr.mig_to_dram},
          {"mig_to_nvm", r.appr.mig_to_nvm},
          {"total", r.appr.total()}},
         {{b.dram_only, power(b.dram_only)}});
    emit("static_nj_per_req", {{"total", r.static_nj_per_req}}, {{b.dram_only, power(b.dram_only)}});
    const double nvm_base = b.nvm_only ? static_cast<double>(b.nvm_only->nvm_writes.total()) : 0.0;
    emit("nvm_writes",
         {{"requests", static_cast<double>(r.nvm_writes.requests), true},
          {"migrations", static_cast<double>(r.nvm_writes.migrations), true},
          {"faults", static_cast<double>(r.nvm_writes.faults), true},
          {"total", static_cast<double>(r.nvm_writes.total()), true}},
         {{b.nvm_only, nvm_base}});
    return rows;
}

}  // namespace hybridmem
