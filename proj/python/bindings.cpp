#include <optional>
#include <string>
#include <vector>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hybridmem/config.hpp"
#include "hybridmem/errors.hpp"
#include "hybridmem/experiment.hpp"
#include "hybridmem/metrics.hpp"
#include "hybridmem/synthetic.hpp"
#include "hybridmem/trace.hpp"

namespace py = pybind11;
using namespace hybridmem;

namespace {

py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::dict amat_dict(const AmatBreakdown& a) {
    py::dict d;
    d["hit_dram"] = a.hit_dram;
    d["hit_nvm"] = a.hit_nvm;
    d["miss"] = a.miss;
    d["mig_to_dram"] = a.mig_to_dram;
    d["mig_to_nvm"] = a.mig_to_nvm;
    d["total"] = a.total();
    return d;
}

py::dict appr_dict(const ApprBreakdown& a) {
    py::dict d;
    d["hit_dram"] = a.hit_dram;
    d["hit_nvm"] = a.hit_nvm;
    d["fault_to_dram"] = a.fault_to_dram;
    d["fault_to_nvm"] = a.fault_to_nvm;
    d["mig_to_dram"] = a.mig_to_dram;
    d["mig_to_nvm"] = a.mig_to_nvm;
    d["total"] = a.total();
    return d;
}

py::object simulate_py(const SimConfig& config, std::optional<std::string> policy,
                       std::optional<std::string> trace_path, std::optional<SyntheticSpec> synthetic,
                       std::optional<std::vector<MemoryAccess>> accesses, const std::string& run_id) {
    SimConfig c = config;
    if (policy)
        c.policy = parse_policy_name(*policy);
    int given = trace_path.has_value() + synthetic.has_value() + accesses.has_value();
    if (given != 1)
        throw py::value_error("pass exactly one of trace_path, synthetic or accesses");
    TraceSource source = trace_path ? TraceSource::file(*trace_path)
                         : synthetic ? TraceSource::synthetic(*synthetic)
                                     : TraceSource::accesses(std::move(*accesses));
    RunReport report;
    {
        py::gil_scoped_release release;
        report = simulate(c, source, run_id);
    }
    return to_python(to_json(report));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hybrid DRAM/NVM page-placement simulator";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<TraceParseError>(m, "TraceParseError", PyExc_ValueError);

    py::enum_<Op>(m, "Op").value("Read", Op::Read).value("Write", Op::Write);

    py::class_<MemoryAccess>(m, "MemoryAccess")
        .def(py::init([](Op op, std::uint64_t address, std::uint64_t page_size) {
                 return MemoryAccess::make(op, address, page_size);
             }),
             py::arg("op"), py::arg("address"), py::arg("page_size") = kDefaultPageSize)
        .def_readonly("op", &MemoryAccess::op)
        .def_readonly("address", &MemoryAccess::address)
        .def_readonly("page", &MemoryAccess::page)
        .def(py::self == py::self)
        .def("__repr__", [](const MemoryAccess& a) {
            return std::string("MemoryAccess(") + op_letter(a.op) + ", " + std::to_string(a.address) + ")";
        });

    m.def("parse_trace_line", &parse_trace_line, py::arg("line"), py::arg("page_size") = kDefaultPageSize,
          py::arg("line_no") = 0, "Decode one trace line; None for blank and comment lines.");

    py::class_<SyntheticSpec>(m, "SyntheticSpec")
        .def(py::init<>())
        .def(py::init([](std::uint64_t n_accesses, std::uint64_t n_pages, double hot_fraction,
                         double hot_access_fraction, double read_ratio, std::uint64_t seed, std::uint64_t page_size) {
                 SyntheticSpec s{n_accesses, n_pages, hot_fraction, hot_access_fraction, read_ratio, seed, page_size};
                 s.validate();
                 return s;
             }),
             py::arg("n_accesses"), py::arg("n_pages"), py::arg("hot_fraction") = 1.0,
             py::arg("hot_access_fraction") = 1.0, py::arg("read_ratio") = 0.5, py::arg("seed") = 0,
             py::arg("page_size") = kDefaultPageSize)
        .def_readwrite("n_accesses", &SyntheticSpec::n_accesses)
        .def_readwrite("n_pages", &SyntheticSpec::n_pages)
        .def_readwrite("hot_fraction", &SyntheticSpec::hot_fraction)
        .def_readwrite("hot_access_fraction", &SyntheticSpec::hot_access_fraction)
        .def_readwrite("read_ratio", &SyntheticSpec::read_ratio)
        .def_readwrite("seed", &SyntheticSpec::seed)
        .def_readwrite("page_size", &SyntheticSpec::page_size);

    m.def("generate_synthetic", &generate_synthetic, py::arg("spec"));

    py::class_<SimConfig>(m, "Config")
        .def(py::init<>())
        .def_static("from_text", &parse_config_text, py::arg("text"))
        .def_static("load", &load_config, py::arg("path"))
        .def("to_text", &to_config_text)
        .def("set", [](SimConfig& c, const std::string& key, const std::string& value) {
            apply_config_key(c, key, value);
            c.validate();
        })
        .def("validate", &SimConfig::validate)
        .def_property_readonly("policy", [](const SimConfig& c) { return std::string(policy_name(c.policy)); })
        .def_property_readonly("page_size", [](const SimConfig& c) { return c.layout.page_size; })
        .def_property_readonly("page_factor", [](const SimConfig& c) { return c.layout.page_factor; })
        .def(py::self == py::self);

    m.def("derive_capacities", [](std::uint64_t distinct_pages, const SimConfig& c) {
        Capacities caps = derive_capacities(distinct_pages, c.layout);
        return py::make_tuple(caps.dram_pages, caps.nvm_pages);
    }, py::arg("distinct_pages"), py::arg("config") = SimConfig{}, "Returns (dram_pages, nvm_pages).");

    py::class_<EventCounters>(m, "EventCounters")
        .def(py::init<>())
        .def_readwrite("n_total", &EventCounters::n_total)
        .def_readwrite("n_hit_dram_read", &EventCounters::n_hit_dram_read)
        .def_readwrite("n_hit_dram_write", &EventCounters::n_hit_dram_write)
        .def_readwrite("n_hit_nvm_read", &EventCounters::n_hit_nvm_read)
        .def_readwrite("n_hit_nvm_write", &EventCounters::n_hit_nvm_write)
        .def_readwrite("n_miss", &EventCounters::n_miss)
        .def_readwrite("n_fault_to_dram", &EventCounters::n_fault_to_dram)
        .def_readwrite("n_fault_to_nvm", &EventCounters::n_fault_to_nvm)
        .def_readwrite("n_mig_nvm_to_dram", &EventCounters::n_mig_nvm_to_dram)
        .def_readwrite("n_mig_dram_to_nvm", &EventCounters::n_mig_dram_to_nvm)
        .def_readwrite("n_evict_to_disk", &EventCounters::n_evict_to_disk)
        .def("validate", &EventCounters::validate);

    m.def("compute_amat", [](const EventCounters& c, const SimConfig& cfg) {
        return amat_dict(compute_amat(c, cfg.device, cfg.layout.page_factor));
    }, py::arg("counters"), py::arg("config") = SimConfig{});
    m.def("compute_appr_dynamic", [](const EventCounters& c, const SimConfig& cfg) {
        return appr_dict(compute_appr_dynamic(c, cfg.device, cfg.layout.page_factor));
    }, py::arg("counters"), py::arg("config") = SimConfig{});
    m.def("nvm_write_breakdown", [](const EventCounters& c, std::uint64_t page_factor) {
        NvmWrites w = nvm_write_breakdown(c, page_factor);
        py::dict d;
        d["requests"] = w.requests;
        d["migrations"] = w.migrations;
        d["faults"] = w.faults;
        d["total"] = w.total();
        return d;
    }, py::arg("counters"), py::arg("page_factor") = 64);

    m.def("simulate", &simulate_py, py::arg("config") = SimConfig{}, py::arg("policy") = py::none(),
          py::arg("trace_path") = py::none(), py::arg("synthetic") = py::none(), py::arg("accesses") = py::none(),
          py::arg("run_id") = "run",
          "Run one policy over one trace and return the report as a dict.");

    m.def("run_plan", [](const std::string& plan_path) {
        ExperimentPlan plan = load_plan(plan_path);
        ExperimentResult result;
        {
            py::gil_scoped_release release;
            result = run_experiment(plan);
        }
        return to_python(nlohmann::json::parse(render_report(result, ReportFormat::Json)));
    }, py::arg("plan_path"), "Run an experiment plan and return the JSON report as a dict.");
}
