#include "hybridmem/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "hybridmem/errors.hpp"
#include "hybridmem/metrics.hpp"
#include "hybridmem/policy.hpp"

namespace hybridmem {

// --- TraceSource -------------------------------------------------------------

TraceSource TraceSource::file(std::filesystem::path path) { return TraceSource(std::move(path)); }

TraceSource TraceSource::synthetic(SyntheticSpec spec) {
    spec.validate();
    return TraceSource(std::move(spec));
}

TraceSource TraceSource::accesses(std::vector<MemoryAccess> accesses, std::string label) {
    return TraceSource(InMemory{std::make_shared<const std::vector<MemoryAccess>>(std::move(accesses)),
                                std::move(label)});
}

std::string TraceSource::label() const {
    if (auto* path = std::get_if<std::filesystem::path>(&source_))
        return path->string();
    if (auto* spec = std::get_if<SyntheticSpec>(&source_)) {
        return "synthetic:n_accesses=" + std::to_string(spec->n_accesses) +
               ";n_pages=" + std::to_string(spec->n_pages) +
               ";hot_fraction=" + format_value(spec->hot_fraction) +
               ";hot_access_fraction=" + format_value(spec->hot_access_fraction) +
               ";read_ratio=" + format_value(spec->read_ratio) + ";seed=" + std::to_string(spec->seed);
    }
    return std::get<InMemory>(source_).label;
}

TraceSummary TraceSource::for_each(std::uint64_t page_size,
                                   const std::function<void(const MemoryAccess&)>& sink) const {
    if (auto* path = std::get_if<std::filesystem::path>(&source_)) {
        std::ifstream in(*path);
        if (!in)
            throw TraceIoError(0, "cannot open trace '" + path->string() + "'");
        return stream_trace(in, page_size, sink);
    }

    std::unordered_set<PageId> pages;
    std::uint64_t count = 0;
    auto feed = [&](const MemoryAccess& a) {
        pages.insert(a.page);
        ++count;
        sink(a);
    };
    if (auto* spec = std::get_if<SyntheticSpec>(&source_)) {
        SyntheticSpec sized = *spec;
        sized.page_size = page_size;
        SyntheticTrace gen(sized);
        while (!gen.done())
            feed(gen.next());
    } else {
        for (const auto& a : *std::get<InMemory>(source_).accesses)
            feed(MemoryAccess::make(a.op, a.address, page_size));
    }
    return {count, pages.size()};
}

// --- simulate ----------------------------------------------------------------

RunReport simulate(const SimConfig& config, const TraceSource& trace, std::string run_id,
                   const AccessObserver& observer) {
    config.validate();
    const std::uint64_t page_size = config.layout.page_size;
    const std::uint64_t page_factor = config.layout.page_factor;

    const TraceSummary summary = trace.for_each(page_size, [](const MemoryAccess&) {});
    if (summary.accesses == 0)
        throw UndefinedMetricError("trace '" + trace.label() + "' has no accesses");

    RunReport report;
    report.run_id = std::move(run_id);
    report.trace = trace.label();
    report.config = config;
    report.capacities = derive_capacities(summary.distinct_pages, config.layout);
    report.trace_accesses = summary.accesses;
    report.distinct_pages = summary.distinct_pages;
    report.warmup_accesses =
        static_cast<std::uint64_t>(std::floor(config.warmup_frac * static_cast<double>(summary.accesses)));

    auto policy = make_policy(config.policy, report.capacities, config.params);
    report.tiers = policy->tiers();

    SimClock clock;
    EventBatch batch;
    std::uint64_t index = 0;
    const TraceSummary replay = trace.for_each(page_size, [&](const MemoryAccess& access) {
        batch.clear();
        policy->on_access(access, batch);
        if (observer)
            observer(access, batch);
        if (index++ >= report.warmup_accesses) {
            accumulate(report.counters, batch);
            clock.advance(batch, config.device, page_factor);
        }
    });
    if (replay.accesses != summary.accesses)
        throw TraceIoError(replay.accesses, "trace changed between sizing and simulation passes");

    report.counters.validate();
    if (report.counters.n_total == 0)
        throw UndefinedMetricError("no accesses left after warm-up");
    report.total_request_time_ns = clock.total_request_time_ns();
    report.amat = compute_amat(report.counters, config.device, page_factor);
    report.appr = compute_appr_dynamic(report.counters, config.device, page_factor);
    report.static_nj_per_req = compute_static_power(report.tiers, config.device, page_size, report.counters,
                                                    clock, config.requests_per_second);
    report.nvm_writes = nvm_write_breakdown(report.counters, page_factor);
    return report;
}

// --- plans -------------------------------------------------------------------

SimConfig ExperimentPlan::config_for(const PlannedRun& run) const {
    SimConfig config = base;
    try {
        for (const auto& [key, value] : run.overrides)
            apply_config_key(config, key, value);
        if (run.policy)
            config.policy = *run.policy;
        config.validate();
    } catch (const ConfigError& e) {
        throw PlanError("run '" + run.run_id + "': " + e.what());
    }
    return config;
}

void ExperimentPlan::validate() const {
    if (runs.empty())
        throw PlanError("plan has no runs");
    std::set<std::string> ids;
    for (const auto& run : runs) {
        if (run.run_id.empty())
            throw PlanError("run with empty run_id");
        if (!ids.insert(run.run_id).second)
            throw PlanError("duplicate run_id '" + run.run_id + "'");
        config_for(run);
    }
    auto check = [&](const std::optional<std::string>& id, const char* role) {
        if (id && !ids.count(*id))
            throw PlanError(std::string(role) + " baseline '" + *id + "' is not a run in the plan");
    };
    check(dram_only_baseline, "dram_only");
    check(nvm_only_baseline, "nvm_only");
    check(clock_dwf_baseline, "clock_dwf");
}

namespace {

using nlohmann::json;

std::string scalar_text(const json& v, const std::string& where) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number() || v.is_boolean())
        return v.dump();
    throw PlanError(where + ": expected a string or number");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return item.key() == k; }))
            throw PlanError(where + ": unknown key '" + item.key() + "'");
    }
}

PlannedRun parse_run(const json& r, const std::filesystem::path& base_dir) {
    if (!r.is_object())
        throw PlanError("each run must be an object");
    reject_unknown(r, {"run_id", "policy", "trace", "synthetic", "overrides"}, "run");
    if (!r.contains("run_id") || !r["run_id"].is_string())
        throw PlanError("run is missing a string run_id");
    const std::string id = r["run_id"].get<std::string>();
    const std::string where = "run '" + id + "'";

    if (r.contains("trace") == r.contains("synthetic"))
        throw PlanError(where + ": exactly one of 'trace' or 'synthetic' is required");

    std::optional<TraceSource> source;
    if (r.contains("trace")) {
        if (!r["trace"].is_string())
            throw PlanError(where + ": 'trace' must be a path");
        std::filesystem::path p = r["trace"].get<std::string>();
        source = TraceSource::file(p.is_absolute() ? p : base_dir / p);
    } else {
        const json& s = r["synthetic"];
        if (!s.is_object())
            throw PlanError(where + ": 'synthetic' must be an object");
        std::string text;
        for (const auto& item : s.items())
            text += item.key() + " = " + scalar_text(item.value(), where) + "\n";
        std::istringstream in(text);
        try {
            source = TraceSource::synthetic(parse_synthetic_spec(in));
        } catch (const ConfigError& e) {
            throw PlanError(where + ": synthetic " + e.what());
        }
    }

    PlannedRun run{id, *source, std::nullopt, {}};
    if (r.contains("policy")) {
        try {
            run.policy = parse_policy_name(scalar_text(r["policy"], where));
        } catch (const ConfigError& e) {
            throw PlanError(where + ": " + e.what());
        }
    }
    if (r.contains("overrides")) {
        if (!r["overrides"].is_object())
            throw PlanError(where + ": 'overrides' must be an object");
        for (const auto& item : r["overrides"].items())
            run.overrides.emplace_back(item.key(), scalar_text(item.value(), where));
    }
    return run;
}

}  // namespace

ExperimentPlan parse_plan(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object())
        throw PlanError("plan must be a JSON object");
    reject_unknown(doc, {"config", "baselines", "workers", "runs"}, "plan");

    ExperimentPlan plan;
    if (doc.contains("config")) {
        std::filesystem::path p = scalar_text(doc["config"], "config");
        plan.base = load_config((p.is_absolute() ? p : base_dir / p).string());
    }
    if (doc.contains("workers")) {
        if (!doc["workers"].is_number_unsigned())
            throw PlanError("workers must be a non-negative integer");
        plan.workers = doc["workers"].get<unsigned>();
    }
    if (doc.contains("baselines")) {
        const json& b = doc["baselines"];
        if (!b.is_object())
            throw PlanError("baselines must be an object");
        reject_unknown(b, {"dram_only", "nvm_only", "clock_dwf"}, "baselines");
        auto read = [&](const char* key, std::optional<std::string>& slot) {
            if (b.contains(key))
                slot = scalar_text(b[key], std::string("baselines.") + key);
        };
        read("dram_only", plan.dram_only_baseline);
        read("nvm_only", plan.nvm_only_baseline);
        read("clock_dwf", plan.clock_dwf_baseline);
    }
    if (!doc.contains("runs") || !doc["runs"].is_array())
        throw PlanError("plan needs a 'runs' array");
    for (const auto& r : doc["runs"])
        plan.runs.push_back(parse_run(r, base_dir));
    plan.validate();
    return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw PlanError("cannot open plan '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw PlanError("plan '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_plan(doc, path.parent_path());
}

// --- execution ---------------------------------------------------------------

const RunReport* ExperimentResult::find(const std::string& run_id) const {
    for (const auto& run : runs)
        if (run.run_id == run_id && run.report)
            return &*run.report;
    return nullptr;
}

Baselines ExperimentResult::baselines() const {
    Baselines b;
    if (dram_only_baseline)
        b.dram_only = find(*dram_only_baseline);
    if (nvm_only_baseline)
        b.nvm_only = find(*nvm_only_baseline);
    if (clock_dwf_baseline)
        b.clock_dwf = find(*clock_dwf_baseline);
    return b;
}

bool ExperimentResult::all_succeeded() const {
    return std::all_of(runs.begin(), runs.end(), [](const RunOutcome& r) { return r.report.has_value(); });
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
    plan.validate();

    ExperimentResult result;
    result.dram_only_baseline = plan.dram_only_baseline;
    result.nvm_only_baseline = plan.nvm_only_baseline;
    result.clock_dwf_baseline = plan.clock_dwf_baseline;
    result.runs.resize(plan.runs.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < plan.runs.size();) {
            const PlannedRun& run = plan.runs[i];
            RunOutcome& outcome = result.runs[i];
            outcome.run_id = run.run_id;
            try {
                outcome.report = simulate(plan.config_for(run), run.trace, run.run_id);
            } catch (const std::exception& e) {
                outcome.error = e.what();
            }
        }
    };

    unsigned n = plan.workers ? plan.workers : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, plan.runs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    std::sort(result.runs.begin(), result.runs.end(),
              [](const RunOutcome& a, const RunOutcome& b) { return a.run_id < b.run_id; });

    const Baselines baselines = result.baselines();
    if (baselines.nvm_only) {
        const double reference = static_cast<double>(baselines.nvm_only->nvm_writes.total());
        for (auto& run : result.runs) {
            if (run.report && run.report->nvm_writes.total() != 0)
                run.report->lifetime_ratio = reference / static_cast<double>(run.report->nvm_writes.total());
        }
    }
    for (const auto& run : result.runs)
        if (run.report)
            result.comparison.push_back(compare_run(*run.report, baselines));
    return result;
}

// --- output ------------------------------------------------------------------

std::string render_report(const ExperimentResult& result, ReportFormat format) {
    const Baselines baselines = result.baselines();
    if (format == ReportFormat::Csv) {
        std::string out = csv_header() + "\n";
        for (const auto& run : result.runs) {
            if (!run.report)
                continue;
            for (const auto& row : csv_rows(*run.report, baselines))
                out += row + "\n";
        }
        return out;
    }

    nlohmann::json doc;
    doc["runs"] = nlohmann::json::array();
    doc["failed_runs"] = nlohmann::json::array();
    for (const auto& run : result.runs) {
        if (run.report)
            doc["runs"].push_back(to_json(*run.report));
        else
            doc["failed_runs"].push_back({{"run_id", run.run_id}, {"error", run.error}});
    }
    doc["comparison"] = nlohmann::json::array();
    for (const auto& c : result.comparison)
        doc["comparison"].push_back(to_json(c));
    auto id = [](const std::optional<std::string>& s) { return s ? nlohmann::json(*s) : nlohmann::json(nullptr); };
    doc["baselines"] = {{"dram_only", id(result.dram_only_baseline)},
                        {"nvm_only", id(result.nvm_only_baseline)},
                        {"clock_dwf", id(result.clock_dwf_baseline)}};
    return doc.dump(2) + "\n";
}

std::string render_comparison_csv(const ExperimentResult& result) {
    auto cell = [](const std::optional<double>& v) { return v ? format_value(*v) : std::string(); };
    std::string out = "run_id,policy,power_vs_dram_only,amat_vs_dram_only,amat_vs_clock_dwf,nvm_writes_vs_nvm_only\n";
    for (const auto& c : result.comparison) {
        out += c.run_id + "," + c.policy + "," + cell(c.power_vs_dram_only) + "," + cell(c.amat_vs_dram_only) +
               "," + cell(c.amat_vs_clock_dwf) + "," + cell(c.nvm_writes_vs_nvm_only) + "\n";
    }
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out.flush())
        throw Error("write to '" + path.string() + "' failed");
}

}  // namespace

void emit_report(const ExperimentResult& result, ReportFormat format, const std::filesystem::path& path) {
    if (std::none_of(result.runs.begin(), result.runs.end(), [](const RunOutcome& r) { return r.report.has_value(); }))
        throw Error("no successful runs to report");
    write_file(path, render_report(result, format));
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
    emit_report(result, ReportFormat::Json, dir / "report.json");
    emit_report(result, ReportFormat::Csv, dir / "report.csv");
    write_file(dir / "comparison.csv", render_comparison_csv(result));
}

}  // namespace hybridmem
