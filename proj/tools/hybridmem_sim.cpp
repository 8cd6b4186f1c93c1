// hybridmem-sim: batch driver for the hybrid DRAM/NVM page-placement simulator.
//
//   hybridmem-sim simulate --config sim.conf --trace app.trace --policy two_lru --out results/
//   hybridmem-sim compare --plan plan.json --out results/
//   hybridmem-sim gen-trace --spec workload.spec --out workload.trace

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hybridmem/config.hpp"
#include "hybridmem/errors.hpp"
#include "hybridmem/experiment.hpp"
#include "hybridmem/synthetic.hpp"

namespace {

using namespace hybridmem;

int run_simulate(const std::string& config_path, const std::string& trace_path, const std::string& spec_path,
                 const std::string& policy, const std::string& run_id, const std::string& out_dir,
                 std::optional<double> warmup, std::optional<std::uint64_t> seed) {
    SimConfig config = config_path.empty() ? SimConfig{} : load_config(config_path);
    if (!policy.empty())
        config.policy = parse_policy_name(policy);
    if (warmup)
        config.warmup_frac = *warmup;
    config.validate();

    std::optional<TraceSource> source;
    if (!trace_path.empty()) {
        source = TraceSource::file(trace_path);
    } else {
        SyntheticSpec spec = load_synthetic_spec(spec_path);
        if (seed)
            spec.seed = *seed;
        source = TraceSource::synthetic(spec);
    }

    ExperimentResult result;
    const std::string id = run_id.empty() ? std::string(policy_name(config.policy)) : run_id;
    result.runs.push_back({id, simulate(config, *source, id), {}});
    result.comparison.push_back(compare_run(*result.runs.front().report, {}));
    write_outputs(result, out_dir);

    const RunReport& r = *result.runs.front().report;
    std::cout << id << ": amat_ns=" << format_value(r.amat.total()) << " appr_nj=" << format_value(r.appr.total())
              << " static_nj_per_req=" << format_value(r.static_nj_per_req)
              << " nvm_writes=" << r.nvm_writes.total() << "\n";
    return 0;
}

int run_compare(const std::string& plan_path, const std::string& out_dir, std::optional<double> warmup,
                std::optional<std::uint64_t> seed) {
    ExperimentPlan plan = load_plan(plan_path);
    if (warmup)
        plan.base.warmup_frac = *warmup;
    if (seed) {
        for (auto& run : plan.runs)
            if (auto* spec = run.trace.synthetic_spec())
                spec->seed = *seed;
    }
    ExperimentResult result = run_experiment(plan);
    write_outputs(result, out_dir);

    for (const auto& run : result.runs) {
        if (run.report)
            std::cout << run.run_id << ": ok\n";
        else
            std::cerr << run.run_id << ": FAILED: " << run.error << "\n";
    }
    return result.all_succeeded() ? 0 : 1;
}

int run_gen_trace(const std::string& spec_path, const std::string& out_path, std::optional<std::uint64_t> seed) {
    SyntheticSpec spec = load_synthetic_spec(spec_path);
    if (seed)
        spec.seed = *seed;
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + out_path + "'");
    out << "# synthetic trace\n";
    std::string text = to_spec_text(spec);
    for (std::size_t pos = 0, nl; (nl = text.find('\n', pos)) != std::string::npos; pos = nl + 1)
        out << "# " << text.substr(pos, nl - pos) << "\n";
    SyntheticTrace gen(spec);
    while (!gen.done())
        write_trace_line(out, gen.next());
    if (!out.flush())
        throw Error("write to '" + out_path + "' failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-driven hybrid DRAM/NVM memory simulator"};
    app.require_subcommand(1);

    std::optional<double> warmup;
    std::optional<std::uint64_t> seed;
    app.add_option("--warmup-frac", warmup, "Leading fraction of each trace excluded from metrics")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--seed", seed, "Seed for synthetic traces");

    std::string config_path, trace_path, spec_path, policy, run_id, out_dir;
    auto* sim = app.add_subcommand("simulate", "Run one policy over one trace");
    sim->add_option("--config", config_path, "Config file (defaults when omitted)")->check(CLI::ExistingFile);
    auto* trace_opt = sim->add_option("--trace", trace_path, "Trace file")->check(CLI::ExistingFile);
    auto* synth_opt = sim->add_option("--synthetic", spec_path, "Synthetic trace spec instead of a trace file")
                          ->check(CLI::ExistingFile);
    trace_opt->excludes(synth_opt);
    sim->add_option("--policy", policy, "dram_lru, nvm_lru, clock_dwf or two_lru (overrides config)");
    sim->add_option("--run-id", run_id, "Run identifier in the report (default: policy name)");
    sim->add_option("--out", out_dir, "Output directory")->required();
    sim->add_option("--warmup-frac", warmup, "Leading fraction of the trace excluded from metrics")
        ->check(CLI::Range(0.0, 1.0));
    sim->add_option("--seed", seed, "Seed for --synthetic");

    std::string plan_path, compare_out;
    auto* cmp = app.add_subcommand("compare", "Run an experiment plan and normalize against baselines");
    cmp->add_option("--plan", plan_path, "Plan file (JSON)")->required()->check(CLI::ExistingFile);
    cmp->add_option("--out", compare_out, "Output directory")->required();
    cmp->add_option("--warmup-frac", warmup, "Leading fraction of each trace excluded from metrics")
        ->check(CLI::Range(0.0, 1.0));
    cmp->add_option("--seed", seed, "Seed for every synthetic run");

    std::string gen_spec, gen_out;
    auto* gen = app.add_subcommand("gen-trace", "Write a synthetic trace file");
    gen->add_option("--spec", gen_spec, "Synthetic trace spec")->required()->check(CLI::ExistingFile);
    gen->add_option("--out", gen_out, "Trace file to write")->required();
    gen->add_option("--seed", seed, "Override the spec's seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            if (trace_path.empty() && spec_path.empty()) {
                std::cerr << "simulate: one of --trace or --synthetic is required\n";
                return 2;
            }
            return run_simulate(config_path, trace_path, spec_path, policy, run_id, out_dir, warmup, seed);
        }
        if (cmp->parsed())
            return run_compare(plan_path, compare_out, warmup, seed);
        return run_gen_trace(gen_spec, gen_out, seed);
    } catch (const PlanError& e) {
        std::cerr << "plan error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
