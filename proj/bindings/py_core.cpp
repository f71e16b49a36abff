// Python façade over the scheduling core: task sets, the three schedulers,
// window allocations, the whole-hyper-period feasibility check, and the
// batch comparison. Exact rationals cross the boundary as fractions.Fraction.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "fnrt/bf.hpp"
#include "fnrt/experiment.hpp"
#include "fnrt/flow_net.hpp"
#include "fnrt/mcmf.hpp"
#include "fnrt/sim.hpp"
#include "fnrt/task_model.hpp"
#include "fnrt/taskgen.hpp"

namespace py = pybind11;
using namespace fnrt;

namespace {

py::object to_fraction(const Rat& r) {
  // import is cached by the interpreter, so this is just a lookup
  return py::module_::import("fractions").attr("Fraction")(r.num(), r.den());
}

Rat to_rat(const py::object& v) {
  if (py::isinstance<py::int_>(v)) return Rat(v.cast<std::int64_t>());
  if (py::isinstance<py::str>(v)) return parse_rat(v.cast<std::string>());
  // fractions.Fraction and anything else exposing numerator/denominator
  if (py::hasattr(v, "numerator") && py::hasattr(v, "denominator"))
    return Rat(v.attr("numerator").cast<std::int64_t>(),
               v.attr("denominator").cast<std::int64_t>());
  throw py::type_error("expected int, str, or Fraction for an exact rational");
}

TaskSet make_taskset(const std::vector<std::pair<Time, Time>>& tasks, int processors) {
  std::vector<Task> out;
  out.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i)
    out.push_back({static_cast<int>(i) + 1, tasks[i].first, tasks[i].second});
  return TaskSet(std::move(out), processors);
}

SchedulerKind parse_kind(const std::string& scheduler, const std::string& model) {
  if (scheduler == "bf") return SchedulerKind::bf_baseline;
  if (scheduler == "fnedf") {
    if (model == "continuous") return SchedulerKind::fnedf_continuous;
    if (model == "discrete") return SchedulerKind::fnedf_discrete;
    throw py::value_error("model must be 'continuous' or 'discrete' for fnedf");
  }
  throw py::value_error("scheduler must be 'fnedf' or 'bf'");
}

py::dict report_to_dict(const SimReport& r, bool with_trace) {
  py::dict d;
  d["horizon"] = r.horizon;
  d["events"] = r.events;
  d["jobs_released"] = r.jobs_released;
  d["jobs_completed"] = r.metrics.jobs_completed;
  d["preemptions"] = r.metrics.preemptions;
  d["migrations"] = r.metrics.migrations;
  d["feasible"] = r.feasible();
  d["preempt_per_job"] = to_fraction(r.preempt_per_job());
  d["migrate_per_job"] = to_fraction(r.migrate_per_job());
  d["complete_checks"] = r.complete_checks;
  d["lag_checks"] = r.lag_checks;
  d["integral_checks"] = r.integral_checks;
  py::list misses;
  for (const DeadlineMiss& m : r.misses) {
    py::dict e;
    e["task"] = m.task_id;
    e["job"] = m.job_index;
    e["deadline"] = m.deadline;
    e["unfinished"] = to_fraction(m.unfinished);
    misses.append(e);
  }
  d["misses"] = misses;
  if (with_trace) {
    py::list trace;
    for (const TraceEntry& e : r.trace)
      trace.append(py::make_tuple(e.processor, e.task_id, e.job_index, to_fraction(e.start),
                                  to_fraction(e.end)));
    d["trace"] = trace;
  }
  return d;
}

std::vector<JobState> jobs_at_zero(const TaskSet& ts) {
  std::vector<JobState> jobs;
  jobs.reserve(static_cast<std::size_t>(ts.size()));
  for (const Task& t : ts.tasks()) jobs.push_back({t.id, 0, 0, t.period, Rat(t.wcet)});
  return jobs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "flow-network scheduling core";

  py::class_<TaskSet>(m, "TaskSet")
      .def(py::init(&make_taskset), py::arg("tasks"), py::arg("processors"),
           "tasks: list of (wcet, period) pairs; ids are assigned 1..n in order")
      .def_property_readonly("processors", &TaskSet::processors)
      .def_property_readonly("tasks",
                             [](const TaskSet& ts) {
                               py::list out;
                               for (const Task& t : ts.tasks())
                                 out.append(py::make_tuple(t.id, t.wcet, t.period));
                               return out;
                             })
      .def("__len__", &TaskSet::size)
      .def_property_readonly("utilization",
                             [](const TaskSet& ts) { return to_fraction(ts.total_utilization()); })
      .def_property_readonly("hyperperiod", &TaskSet::hyperperiod)
      .def("to_text",
           [](const TaskSet& ts) {
             std::ostringstream os;
             save_taskset(ts, os);
             return os.str();
           })
      .def("__repr__", [](const TaskSet& ts) {
        std::ostringstream os;
        os << "TaskSet(" << ts.size() << " tasks, M=" << ts.processors()
           << ", U=" << ts.total_utilization().str() << ")";
        return os.str();
      });

  m.def("load_taskset", [](const std::string& text) {
    std::istringstream is(text);
    return load_taskset(is);
  });
  m.def("load_taskset_file", &load_taskset_file);

  m.def(
      "generate",
      [](int processors, int tasks, py::object u_target, Time period_lo, Time period_hi,
         Time hyperperiod_cap, std::uint64_t seed) {
        GenConfig cfg;
        cfg.processors = processors;
        cfg.tasks = tasks;
        if (!u_target.is_none()) cfg.u_target = to_rat(u_target);
        cfg.period_lo = period_lo;
        cfg.period_hi = period_hi;
        cfg.hyperperiod_cap = hyperperiod_cap;
        cfg.seed = seed;
        return gen_taskset(cfg);
      },
      py::arg("processors"), py::arg("tasks"), py::arg("u_target") = py::none(),
      py::arg("period_lo") = 5, py::arg("period_hi") = 20,
      py::arg("hyperperiod_cap") = 600000, py::arg("seed") = 1,
      "random task set with an exact total-utilization target (default: processors)");

  m.def(
      "simulate",
      [](const TaskSet& ts, const std::string& scheduler, const std::string& model, Time horizon,
         bool trace, bool admission_check) {
        SimOptions opts;
        opts.horizon = horizon;
        opts.collect_trace = trace;
        opts.admission_check = admission_check;
        return report_to_dict(run(ts, parse_kind(scheduler, model), opts), trace);
      },
      py::arg("taskset"), py::arg("scheduler") = "fnedf", py::arg("model") = "discrete",
      py::arg("horizon") = 0, py::arg("trace") = false, py::arg("admission_check") = true,
      "event-driven run over one hyper-period (or `horizon`); returns a report dict");

  m.def(
      "first_window_allocations",
      [](const TaskSet& ts, const std::string& model) {
        const std::vector<JobState> jobs = jobs_at_zero(ts);
        py::list out;
        if (model == "continuous") {
          for (const Rat& x : fnedf_continuous_step(ts, jobs, 0).x) out.append(to_fraction(x));
        } else if (model == "discrete") {
          for (std::int64_t x : fnedf_discrete_step(ts, jobs, 0, make_bf_state(ts)).x)
            out.append(x);
        } else {
          throw py::value_error("model must be 'continuous' or 'discrete'");
        }
        return out;
      },
      py::arg("taskset"), py::arg("model") = "discrete",
      "W_1 share per task from one scheduling step at t=0");

  m.def(
      "bf_windows",
      [](const TaskSet& ts, int count) {
        BfState state = make_bf_state(ts);
        py::list out;
        for (int k = 0; k < count; ++k) out.append(run_bf(ts, state, state.boundary));
        return out;
      },
      py::arg("taskset"), py::arg("count"),
      "per-window unit allocations of the boundary-fair baseline, from t=0");

  m.def(
      "verify",
      [](const TaskSet& ts) {
        const FlowNetwork net = build_full_horizon(ts);
        const FlowResult flow = max_flow(net);
        py::dict d;
        d["jobs"] = net.jobs.size();
        d["windows"] = net.windows.size();
        d["demand"] = to_fraction(net.demand());
        d["flow"] = to_fraction(flow.total);
        d["complete"] = is_complete(net, flow);
        return d;
      },
      py::arg("taskset"),
      "max flow over the whole-hyper-period network; complete == schedulable");

  m.def(
      "experiment_csv",
      [](std::vector<int> processor_counts, std::vector<py::object> task_ratios,
         int sets_per_config, std::uint64_t seed, Time period_lo, Time period_hi,
         Time hyperperiod_cap, int workers) {
        ExperimentConfig cfg;
        cfg.processor_counts = std::move(processor_counts);
        if (!task_ratios.empty()) {
          cfg.task_ratios.clear();
          for (const py::object& r : task_ratios) cfg.task_ratios.push_back(to_rat(r));
        }
        cfg.sets_per_config = sets_per_config;
        cfg.seed = seed;
        cfg.period_lo = period_lo;
        cfg.period_hi = period_hi;
        cfg.hyperperiod_cap = hyperperiod_cap;
        cfg.workers = workers;
        return experiment_csv(run_experiment(cfg), cfg.include_timing);
      },
      py::arg("processor_counts") = std::vector<int>{2, 4},
      py::arg("task_ratios") = std::vector<py::object>{}, py::arg("sets_per_config") = 100,
      py::arg("seed") = 1, py::arg("period_lo") = 5, py::arg("period_hi") = 20,
      py::arg("hyperperiod_cap") = 20000, py::arg("workers") = 0,
      "baseline-vs-flow comparison on generated sets, as a CSV string "
      "(task_ratios default: [4])");
}
