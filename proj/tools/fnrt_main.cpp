#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fnrt/experiment.hpp"
#include "fnrt/flow_net.hpp"
#include "fnrt/mcmf.hpp"
#include "fnrt/sim.hpp"
#include "fnrt/taskgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;  // misses, rejected admission, or no complete flow
constexpr int kExitError = 3;       // internal failure or resource budget

fnrt::TaskSet load_or_die(const std::string& path) {
  if (path == "-") return fnrt::load_taskset(std::cin);
  return fnrt::load_taskset_file(path);
}

int cmd_simulate(const std::string& path, const std::string& scheduler, const std::string& model,
                 fnrt::Time horizon, bool trace) {
  fnrt::SchedulerKind kind;
  if (scheduler == "bf") {
    if (model == "continuous")
      throw CLI::ValidationError("--model", "the bf scheduler is discrete-time only");
    kind = fnrt::SchedulerKind::bf_baseline;
  } else if (model == "continuous") {
    kind = fnrt::SchedulerKind::fnedf_continuous;
  } else {
    kind = fnrt::SchedulerKind::fnedf_discrete;
  }

  const fnrt::TaskSet ts = load_or_die(path);
  fnrt::SimOptions opts;
  opts.horizon = horizon;
  opts.collect_trace = trace;

  fnrt::SimReport report;
  try {
    report = fnrt::run(ts, kind, opts);
  } catch (const fnrt::AdmissionError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kExitInfeasible;
  }

  std::cout << "tasks " << ts.size() << "  processors " << ts.processors() << "  U "
            << ts.total_utilization().str() << "  hyperperiod " << ts.hyperperiod() << "\n";
  std::cout << "simulated [0, " << report.horizon << "]  events " << report.events
            << "  jobs released " << report.jobs_released << "  completed "
            << report.metrics.jobs_completed << "\n";
  std::cout << "preemptions " << report.metrics.preemptions << " ("
            << report.preempt_per_job().decimals(4) << "/job)  migrations "
            << report.metrics.migrations << " (" << report.migrate_per_job().decimals(4)
            << "/job)\n";
  std::cout << "deadline misses " << report.misses.size() << "\n";
  for (const auto& miss : report.misses)
    std::cout << "  miss task " << miss.task_id << " job " << miss.job_index << " deadline "
              << miss.deadline << " unfinished " << miss.unfinished.str() << "\n";
  if (trace) {
    std::cout << "trace (start end processor task job):\n";
    for (const auto& e : report.trace)
      std::cout << "  " << e.start.str() << " " << e.end.str() << " " << e.processor << " "
                << e.task_id << " " << e.job_index << "\n";
  }
  return report.misses.empty() ? kExitOk : kExitInfeasible;
}

int cmd_generate(const fnrt::GenConfig& cfg, const std::string& out_path) {
  const fnrt::TaskSet ts = fnrt::gen_taskset(cfg);
  if (out_path.empty() || out_path == "-") {
    fnrt::save_taskset(ts, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    fnrt::save_taskset(ts, out);
  }
  return kExitOk;
}

int cmd_experiment(const fnrt::ExperimentConfig& cfg, const std::string& out_path) {
  const std::vector<fnrt::ExperimentRow> rows = fnrt::run_experiment(cfg);
  const std::string csv = fnrt::experiment_csv(rows, cfg.include_timing);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << csv;
    std::cerr << rows.size() << " rows -> " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& path, std::int64_t node_budget) {
  const fnrt::TaskSet ts = load_or_die(path);
  fnrt::FlowNetwork net;
  try {
    net = fnrt::build_full_horizon(ts, node_budget);
  } catch (const std::length_error& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitError;
  }
  const fnrt::FlowResult result = fnrt::max_flow(net);
  std::cout << "jobs " << net.jobs.size() << "  windows " << net.windows.size() << "  demand "
            << net.demand().str() << "  max flow " << result.total.str() << "\n";
  if (fnrt::is_complete(net, result)) {
    std::cout << "feasible: complete maximum flow over [0, " << ts.hyperperiod() << "]\n";
    return kExitOk;
  }
  std::cout << "infeasible: short of demand by " << (net.demand() - result.total).str() << "\n";
  return kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flow-network real-time scheduling toolkit"};
  app.require_subcommand(1);

  // simulate
  std::string sim_path, sim_scheduler = "fnedf", sim_model;
  fnrt::Time sim_horizon = 0;
  bool sim_trace = false;
  auto* sim = app.add_subcommand("simulate", "run a scheduler over a task set");
  sim->add_option("taskset", sim_path, "task set file (- for stdin)")->required();
  sim->add_option("--scheduler", sim_scheduler, "fnedf or bf")
      ->check(CLI::IsMember({"fnedf", "bf"}));
  auto* model_opt = sim->add_option("--model", sim_model, "continuous or discrete")
                        ->check(CLI::IsMember({"continuous", "discrete"}));
  sim->add_option("--horizon", sim_horizon, "stop at this boundary (default: hyperperiod)");
  sim->add_flag("--trace", sim_trace, "print every dispatched segment");
  sim->callback([&]() {
    if (sim_scheduler == "fnedf" && model_opt->count() == 0)
      throw CLI::RequiresError("--scheduler fnedf", "--model");
  });

  // generate
  fnrt::GenConfig gen;
  std::string gen_out, gen_u_target;
  auto* gcmd = app.add_subcommand("generate", "emit a random task set");
  gcmd->add_option("--procs", gen.processors, "processor count")->check(CLI::PositiveNumber);
  gcmd->add_option("--tasks", gen.tasks, "task count")->check(CLI::PositiveNumber);
  gcmd->add_option("--u-target", gen_u_target,
                   "total utilization, rational or decimal (default: procs)");
  gcmd->add_option("--period-lo", gen.period_lo, "smallest period")->check(CLI::PositiveNumber);
  gcmd->add_option("--period-hi", gen.period_hi, "largest period")->check(CLI::PositiveNumber);
  gcmd->add_option("--hcap", gen.hyperperiod_cap, "hyperperiod cap")->check(CLI::PositiveNumber);
  gcmd->add_option("--seed", gen.seed, "rng seed");
  gcmd->add_option("-o,--out", gen_out, "output file (default: stdout)");

  // experiment
  fnrt::ExperimentConfig exp;
  std::vector<std::string> exp_ratios;
  std::string exp_out;
  auto* ecmd = app.add_subcommand("experiment", "bf vs fnedf comparison batch, CSV out");
  ecmd->add_option("--procs", exp.processor_counts, "processor counts (repeatable)");
  ecmd->add_option("--ratio", exp_ratios, "tasks-per-processor ratios (repeatable)");
  ecmd->add_option("--sets", exp.sets_per_config, "sets per configuration")
      ->check(CLI::PositiveNumber);
  ecmd->add_option("--seed", exp.seed, "rng seed");
  ecmd->add_option("--period-lo", exp.period_lo, "smallest period");
  ecmd->add_option("--period-hi", exp.period_hi, "largest period");
  ecmd->add_option("--hcap", exp.hyperperiod_cap, "hyperperiod cap");
  ecmd->add_flag("--timing", exp.include_timing, "add a wall_ms column (not reproducible)");
  ecmd->add_option("--workers", exp.workers, "worker threads (default: FNRT_WORKERS or cores)");
  ecmd->add_option("-o,--out", exp_out, "output file (default: stdout)");

  // verify
  std::string verify_path;
  std::int64_t verify_budget = 500000;
  auto* vcmd = app.add_subcommand("verify", "full-horizon feasibility via maximum flow");
  vcmd->add_option("taskset", verify_path, "task set file (- for stdin)")->required();
  vcmd->add_option("--node-budget", verify_budget, "abort above this many nodes")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim_path, sim_scheduler, sim_model, sim_horizon,
                                           sim_trace);
    if (gcmd->parsed()) {
      if (!gen_u_target.empty()) gen.u_target = fnrt::parse_rat(gen_u_target);
      return cmd_generate(gen, gen_out);
    }
    if (ecmd->parsed()) {
      exp.task_ratios.clear();
      for (const auto& r : exp_ratios) exp.task_ratios.push_back(fnrt::parse_rat(r));
      if (exp.task_ratios.empty()) exp.task_ratios = {fnrt::Rat(4)};
      return cmd_experiment(exp, exp_out);
    }
    if (vcmd->parsed()) return cmd_verify(verify_path, verify_budget);
  } catch (const fnrt::AdmissionError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
