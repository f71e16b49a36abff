#pragma once

#include <stdexcept>
#include <vector>

#include "fnrt/bf.hpp"
#include "fnrt/dispatch.hpp"
#include "fnrt/mcmf.hpp"
#include "fnrt/task_model.hpp"

namespace fnrt {

enum class SchedulerKind { fnedf_continuous, fnedf_discrete, bf_baseline };

// Task set refused up front (total utilization above the processor count).
class AdmissionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A scheduling event's flow failed to saturate the source edges, so some job
// cannot meet its deadline; raised unless the run opts into carrying on.
class SolverIncomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimOptions {
  Time horizon = 0;               // 0: one hyperperiod
  bool admission_check = true;    // refuse U > M
  bool abort_on_incomplete = true;  // throw SolverIncomplete vs. schedule what fits
  bool relaxed_capacities = false;  // clamp negative continuous capacities (diagnostics)
  bool collect_trace = false;
};

struct DeadlineMiss {
  int task_id = 0;
  int job_index = 0;
  Time deadline = 0;
  Rat unfinished;
};

struct TraceEntry {
  int processor = 0;
  int task_id = 0;
  int job_index = 0;
  Rat start;
  Rat end;
};

struct SimReport {
  Time horizon = 0;  // last boundary actually simulated
  std::int64_t events = 0;
  std::int64_t jobs_released = 0;
  std::vector<DeadlineMiss> misses;
  MetricCounters metrics;
  // Invariant audits that held during the run (each would have thrown
  // otherwise): flow completeness per event, BF lag bounds per task-boundary,
  // integrality of discrete W_1 allocations per task-event.
  std::int64_t complete_checks = 0;
  std::int64_t lag_checks = 0;
  std::int64_t integral_checks = 0;
  SolverStats solver;  // summed over events
  std::vector<TraceEntry> trace;
  double wall_ms = 0.0;

  bool feasible() const { return misses.empty(); }
  Rat preempt_per_job() const;
  Rat migrate_per_job() const;
};

// One continuous-model scheduling step at boundary t: fluid-reserved window
// capacities, EDF-costed FNRT, min-cost max-flow, W_1 flows per task (row =
// task_id - 1). `complete` records whether every source edge saturated;
// relaxed runs clamp negative capacities instead of throwing.
struct ContinuousStep {
  std::vector<Rat> x;
  bool complete = true;
};
ContinuousStep fnedf_continuous_step(const TaskSet& ts, const std::vector<JobState>& jobs,
                                     Time t, bool relaxed = false, SolverStats* stats = nullptr);

// One discrete-model step: BF-reference window capacities, integral flow.
// `reference` must be the BF state at t; it is not advanced.
struct DiscreteStep {
  std::vector<std::int64_t> x;
  bool complete = true;
};
DiscreteStep fnedf_discrete_step(const TaskSet& ts, const std::vector<JobState>& jobs, Time t,
                                 const BfState& reference, SolverStats* stats = nullptr);

// Event-driven run over [0, horizon]: release jobs at boundaries, ask the
// scheduler for W_1 allocations, dispatch by McNaughton in EDF order, advance.
SimReport run(const TaskSet& ts, SchedulerKind kind, const SimOptions& opts = {});

}  // namespace fnrt
