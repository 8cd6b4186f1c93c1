#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hybridmem/config.hpp"
#include "hybridmem/events.hpp"
#include "hybridmem/report.hpp"
#include "hybridmem/synthetic.hpp"
#include "hybridmem/trace.hpp"

namespace hybridmem {

// Where a run's accesses come from. Sources are re-readable: a run makes one
// pass to size memory and a second to simulate.
class TraceSource {
  public:
    static TraceSource file(std::filesystem::path path);
    static TraceSource synthetic(SyntheticSpec spec);
    static TraceSource accesses(std::vector<MemoryAccess> accesses, std::string label = "in-memory");

    std::string label() const;

    // Page ids are re-derived from addresses with `page_size`.
    TraceSummary for_each(std::uint64_t page_size, const std::function<void(const MemoryAccess&)>& sink) const;

    const SyntheticSpec* synthetic_spec() const { return std::get_if<SyntheticSpec>(&source_); }
    SyntheticSpec* synthetic_spec() { return std::get_if<SyntheticSpec>(&source_); }

  private:
    struct InMemory {
        std::shared_ptr<const std::vector<MemoryAccess>> accesses;
        std::string label;
    };

    explicit TraceSource(std::variant<std::filesystem::path, SyntheticSpec, InMemory> s) : source_(std::move(s)) {}

    std::variant<std::filesystem::path, SyntheticSpec, InMemory> source_;
};

// Called once per access, including warm-up accesses, with its event batch.
using AccessObserver = std::function<void(const MemoryAccess&, std::span<const SimEvent>)>;

// Runs `config.policy` over `trace` and evaluates every metric. The first
// floor(warmup_frac * accesses) accesses drive the policy but are excluded from
// the counters and the clock. Throws UndefinedMetricError if no access is
// measured.
RunReport simulate(const SimConfig& config, const TraceSource& trace, std::string run_id,
                   const AccessObserver& observer = {});

struct PlannedRun {
    std::string run_id;
    TraceSource trace;
    std::optional<PolicyKind> policy;  // defaults to the base config's policy
    std::vector<std::pair<std::string, std::string>> overrides;
};

struct ExperimentPlan {
    SimConfig base;
    std::vector<PlannedRun> runs;
    std::optional<std::string> dram_only_baseline;
    std::optional<std::string> nvm_only_baseline;
    std::optional<std::string> clock_dwf_baseline;
    unsigned workers = 0;  // 0: hardware concurrency

    // Unique run ids, known baselines, valid overrides. Throws PlanError.
    void validate() const;
    // Base config with the run's overrides and policy applied.
    SimConfig config_for(const PlannedRun& run) const;
};

// Plan document (JSON):
//   {
//     "config": "hybrid.conf",                  optional, relative to the plan
//     "baselines": {"dram_only": "dram", "nvm_only": "nvm", "clock_dwf": "dwf"},
//     "workers": 4,                               optional
//     "runs": [
//       {"run_id": "dram", "policy": "dram_lru", "trace": "traces/a.trace"},
//       {"run_id": "two", "policy": "two_lru",
//        "synthetic": {"n_accesses": 100000, "n_pages": 4000, "read_ratio": 0.3, "seed": 1},
//        "overrides": {"read_threshold": "inf"}}
//     ]
//   }
// Synthetic keys match the trace spec file; override keys match the config file.
ExperimentPlan parse_plan(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ExperimentPlan load_plan(const std::filesystem::path& path);

struct RunOutcome {
    std::string run_id;
    std::optional<RunReport> report;
    std::string error;  // set when the run failed
};

struct ExperimentResult {
    std::vector<RunOutcome> runs;        // sorted by run_id
    std::vector<Comparison> comparison;  // successful runs, sorted by run_id
    std::optional<std::string> dram_only_baseline;
    std::optional<std::string> nvm_only_baseline;
    std::optional<std::string> clock_dwf_baseline;

    const RunReport* find(const std::string& run_id) const;
    Baselines baselines() const;
    bool all_succeeded() const;
};

// Executes every run on a worker pool. A failing run is recorded in its
// outcome and does not stop the others.
ExperimentResult run_experiment(const ExperimentPlan& plan);

enum class ReportFormat { Json, Csv };

// Byte-stable output: sorted keys and six-significant-digit numbers.
std::string render_report(const ExperimentResult& result, ReportFormat format);
std::string render_comparison_csv(const ExperimentResult& result);
void emit_report(const ExperimentResult& result, ReportFormat format, const std::filesystem::path& path);

// Writes report.json, report.csv and comparison.csv into `dir`.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace hybridmem
