#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "relreg/bench.hpp"
#include "relreg/config.hpp"
#include "relreg/core.hpp"
#include "relreg/costmap.hpp"
#include "relreg/environment.hpp"
#include "relreg/error.hpp"
#include "relreg/planner.hpp"
#include "relreg/sampling.hpp"

namespace py = pybind11;
using namespace relreg;

namespace {

py::list rows_to_list(const std::vector<BenchRow>& rows, bool include_timing) {
  py::list out;
  for (const auto& row : rows) {
    py::dict d;
    d["sampler"] = row.sampler;
    d["trial"] = row.record.trial;
    d["iteration"] = row.record.iteration;
    if (include_timing) d["elapsed_ms"] = row.record.elapsed_ms;
    d["best_cost"] = row.record.best_cost ? py::cast(*row.record.best_cost) : py::none();
    d["vertices"] = row.record.vertices;
    out.append(d);
  }
  return out;
}

py::dict summary_to_dict(const BenchSummary& s) {
  py::dict out;
  out["world"] = s.world;
  out["by_time"] = s.by_time;
  py::list samplers;
  for (const auto& ss : s.samplers) {
    py::dict d;
    d["label"] = ss.label;
    d["trials"] = ss.trials;
    d["successes"] = ss.successes;
    d["failed_trials"] = ss.failed_trials;
    d["success_rate"] = ss.success_rate;
    d["final_median"] = ss.final.median;
    d["final_q1"] = ss.final.q1;
    d["final_q3"] = ss.final.q3;
    samplers.append(d);
  }
  out["samplers"] = samplers;
  return out;
}

}  // namespace

PYBIND11_MODULE(_relreg, m) {
  m.doc() = "Relevant-region planning core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<DegenerateSetError>(m, "DegenerateSetError", PyExc_ValueError);

  m.def("l2_heuristic", &l2_heuristic, py::arg("a"), py::arg("b"));

  m.def("worlds", [] {
    std::vector<std::tuple<std::string, int, std::string>> out;
    for (const auto& w : registered_worlds()) out.emplace_back(w.name, w.dim, w.description);
    return out;
  }, "Registered benchmark worlds as (name, dim, description).");

  py::class_<Environment>(m, "Environment")
      .def_readonly("name", &Environment::name)
      .def_readonly("start", &Environment::start)
      .def_readonly("goal", &Environment::goal)
      .def_readonly("goal_radius", &Environment::goal_radius)
      .def_readonly("step_size", &Environment::step_size)
      .def_property_readonly("dim", &Environment::dim)
      .def_property_readonly("lower", [](const Environment& e) { return e.bounds.lower; })
      .def_property_readonly("upper", [](const Environment& e) { return e.bounds.upper; })
      .def_property_readonly("costmap", [](const Environment& e) { return e.costmap.kind_name(); })
      .def("is_state_valid", &Environment::is_state_valid, py::arg("x"))
      .def("is_motion_valid", &Environment::is_motion_valid, py::arg("a"), py::arg("b"))
      .def("in_goal", &Environment::in_goal, py::arg("x"))
      .def("cost", [](const Environment& e, const StateVec& x) { return e.costmap.eval(x); },
           py::arg("x"))
      .def("__repr__", [](const Environment& e) {
        return "<Environment " + e.name + " dim=" + std::to_string(e.dim()) + ">";
      });

  m.def("build_environment", py::overload_cast<const std::string&>(&build_environment),
        py::arg("world"));

  m.def("edge_cost", [](const Environment& env, const StateVec& a, const StateVec& b,
                        std::optional<int> n_seg) {
    if (n_seg) return edge_cost(env.costmap, a, b, *n_seg);
    return edge_cost(env.costmap, a, b, env.step_size);
  }, py::arg("env"), py::arg("a"), py::arg("b"), py::arg("n_seg") = py::none());

  py::class_<StepLimitInputs>(m, "StepLimitInputs")
      .def(py::init([](double g_gp, double h_vg, double cos_theta, double c_vp, double epsilon) {
             return StepLimitInputs{g_gp, h_vg, cos_theta, c_vp, epsilon};
           }),
           py::arg("g_gp"), py::arg("h_vg"), py::arg("cos_theta"), py::arg("c_vp") = 1.0,
           py::arg("epsilon"))
      .def_readwrite("g_gp", &StepLimitInputs::g_gp)
      .def_readwrite("h_vg", &StepLimitInputs::h_vg)
      .def_readwrite("cos_theta", &StepLimitInputs::cos_theta)
      .def_readwrite("c_vp", &StepLimitInputs::c_vp)
      .def_readwrite("epsilon", &StepLimitInputs::epsilon);

  m.def("step_limit_uniform", &step_limit_uniform, py::arg("inputs"));
  m.def("step_limit_general", &step_limit_general, py::arg("inputs"));

  py::class_<PlannerConfig>(m, "PlannerConfig")
      .def(py::init<>())
      .def_readwrite("step_size", &PlannerConfig::step_size)
      .def_readwrite("epsilon_factor", &PlannerConfig::epsilon_factor)
      .def_readwrite("p_rel", &PlannerConfig::p_rel)
      .def_readwrite("p_goal", &PlannerConfig::p_goal)
      .def_readwrite("n_q", &PlannerConfig::n_q)
      .def_readwrite("t_init", &PlannerConfig::t_init)
      .def_readwrite("max_iterations", &PlannerConfig::max_iterations)
      .def_readwrite("time_budget_ms", &PlannerConfig::time_budget_ms)
      .def_readwrite("seed", &PlannerConfig::seed)
      .def_readwrite("stop_on_first_solution", &PlannerConfig::stop_on_first_solution)
      .def_property("sampler",
                    [](const PlannerConfig& c) { return to_string(c.sampler); },
                    [](PlannerConfig& c, const std::string& s) { c.sampler = parse_sampler_kind(s); })
      .def("validate", &PlannerConfig::validate);

  py::class_<PlanResult>(m, "PlanResult")
      .def_readonly("best_cost", &PlanResult::best_cost)
      .def_readonly("best_path", &PlanResult::best_path)
      .def_readonly("vertices", &PlanResult::vertices)
      .def_readonly("edges", &PlanResult::edges)
      .def_readonly("iterations", &PlanResult::iterations)
      .def_readonly("proven_optimal", &PlanResult::proven_optimal)
      .def_readonly("elapsed_ms", &PlanResult::elapsed_ms)
      .def_property_readonly("solved", [](const PlanResult& r) { return r.best_cost.has_value(); });

  m.def("plan", [](const Environment& env, const PlannerConfig& config) {
    config.validate();
    py::gil_scoped_release release;
    return plan(env, config);
  }, py::arg("env"), py::arg("config"));

  py::class_<RunConfig>(m, "RunConfig")
      .def_property_readonly("world", [](const RunConfig& c) { return c.environment.world; })
      .def_readwrite("planner", &RunConfig::planner)
      .def_property("trials", [](const RunConfig& c) { return c.bench.trials; },
                    [](RunConfig& c, int n) { c.bench.trials = n; })
      .def_property("out_dir", [](const RunConfig& c) { return c.bench.out_dir; },
                    [](RunConfig& c, const std::string& s) { c.bench.out_dir = s; })
      .def_property("samplers",
                    [](const RunConfig& c) {
                      std::vector<std::string> out;
                      for (const auto& s : c.bench.samplers) out.push_back(s.label);
                      return out;
                    },
                    [](RunConfig& c, const std::vector<std::string>& specs) {
                      c.bench.samplers.clear();
                      for (const auto& s : specs) c.bench.samplers.push_back(parse_sampler_spec(s));
                    })
      .def("validate", &RunConfig::validate);

  m.def("load_config", &load_run_config, py::arg("path"));
  m.def("parse_config", &parse_run_config, py::arg("text"), py::arg("base_dir") = std::filesystem::path{});

  m.def("run_benchmark", [](const RunConfig& config, bool write) {
    config.validate();
    BenchResult result;
    {
      py::gil_scoped_release release;
      result = run_benchmark(config);
      if (write) write_outputs(result, config);
    }
    py::dict out;
    out["rows"] = rows_to_list(result.rows, !config.bench.deterministic);
    out["summary"] = summary_to_dict(result.summary);
    return out;
  }, py::arg("config"), py::arg("write") = false);
}
