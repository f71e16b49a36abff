#include "fnrt/sim.hpp"

#include <algorithm>
#include <chrono>

#include "fnrt/flow_net.hpp"

namespace fnrt {

Rat SimReport::preempt_per_job() const {
  if (metrics.jobs_completed == 0) return Rat(0);
  return Rat(metrics.preemptions, metrics.jobs_completed);
}

Rat SimReport::migrate_per_job() const {
  if (metrics.jobs_completed == 0) return Rat(0);
  return Rat(metrics.migrations, metrics.jobs_completed);
}

ContinuousStep fnedf_continuous_step(const TaskSet& ts, const std::vector<JobState>& jobs,
                                     Time t, bool relaxed, SolverStats* stats) {
  const ActiveJobArea aja = build_aja(ts, jobs, t, TimeModel::continuous);
  const std::vector<Rat> caps = window_capacities_continuous(aja, ts, relaxed);
  const FlowNetwork net = build_fnrt_edf(aja, caps);
  auto [scaled, factor] = scale_to_integers(net);
  const FlowResult raw = min_cost_max_flow(scaled, stats);

  ContinuousStep step;
  step.complete = is_complete(scaled, raw);
  if (!step.complete && !relaxed)
    throw SolverIncomplete("continuous step at t=" + std::to_string(t) + ": flow " +
                           unscale(raw, factor).total.str() + " of demand " +
                           net.demand().str());
  step.x = w1_allocations(net, unscale(raw, factor), ts.size());
  return step;
}

DiscreteStep fnedf_discrete_step(const TaskSet& ts, const std::vector<JobState>& jobs, Time t,
                                 const BfState& reference, SolverStats* stats) {
  const ActiveJobArea aja = build_aja(ts, jobs, t, TimeModel::discrete);
  std::vector<Time> grid;
  grid.reserve(aja.windows.size() + 1);
  grid.push_back(aja.now);
  for (const auto& w : aja.windows) grid.push_back(w.end);

  const std::vector<std::int64_t> caps_int =
      compute_window_capacities_discrete(ts, reference, t, grid);
  std::vector<Rat> caps(caps_int.begin(), caps_int.end());

  // Discrete remaining work is always whole units, so the network is already
  // integral and the solver's flows come back integral too.
  const FlowNetwork net = build_fnrt_edf(aja, caps);
  const FlowResult result = min_cost_max_flow(net, stats);

  DiscreteStep step;
  step.complete = is_complete(net, result);
  if (!step.complete)
    throw SolverIncomplete("discrete step at t=" + std::to_string(t) + ": flow " +
                           result.total.str() + " of demand " + net.demand().str());
  const std::vector<Rat> x = w1_allocations(net, result, ts.size());
  step.x.reserve(x.size());
  for (const Rat& v : x) step.x.push_back(v.as_integer());
  return step;
}

SimReport run(const TaskSet& ts, SchedulerKind kind, const SimOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = ts.size();
  const int m = ts.processors();

  if (opts.admission_check && ts.total_utilization() > Rat(m))
    throw AdmissionError("utilization " + ts.total_utilization().str() + " exceeds " +
                         std::to_string(m) + " processors");

  const Time horizon = opts.horizon > 0 ? opts.horizon : ts.hyperperiod();

  SimReport report;
  std::vector<JobState> jobs(n);
  MetricsTracker tracker(n);
  BfState bf = make_bf_state(ts);  // baseline scheduler state / discrete reference
  std::vector<Rat> x(n);
  OrderedAlloc order;
  std::vector<std::size_t> edf_rows(n);

  Time t = 0;
  for (;;) {
    const Time next = next_all_jobs_boundary(ts, t);
    if (next > horizon) break;
    const Time l1 = next - t;

    // Releases at the window's start: every task whose period divides t
    // starts a fresh job; unfinished work at that instant is the previous
    // job's deadline miss. Releases at the horizon itself belong to the next
    // run and never happen (the break above fires first); the sweep below
    // flags any work they would have displaced.
    for (std::size_t r = 0; r < n; ++r) {
      const Task& task = ts.tasks()[r];
      if (t % task.period != 0) continue;
      if (t > 0 && jobs[r].remaining > Rat(0))
        report.misses.push_back({task.id, jobs[r].job_index, t, jobs[r].remaining});
      const int j = static_cast<int>(t / task.period);
      jobs[r] = {task.id, j, t, t + task.period, Rat(task.wcet)};
      tracker.release(task.id, j, Rat(task.wcet));
      ++report.jobs_released;
    }

    std::fill(x.begin(), x.end(), Rat(0));
    switch (kind) {
      case SchedulerKind::bf_baseline: {
        const std::vector<std::int64_t> units = run_bf(ts, bf, t);
        for (std::size_t r = 0; r < n; ++r) x[r] = Rat(units[r]);
        report.lag_checks += static_cast<std::int64_t>(n);
        break;
      }
      case SchedulerKind::fnedf_continuous: {
        SolverStats stats;
        ContinuousStep step =
            fnedf_continuous_step(ts, jobs, t, opts.relaxed_capacities, &stats);
        if (!step.complete && opts.abort_on_incomplete)
          throw SolverIncomplete("incomplete flow at t=" + std::to_string(t));
        if (step.complete) ++report.complete_checks;
        x = std::move(step.x);
        report.solver.iterations += stats.iterations;
        report.solver.augmentations += stats.augmentations;
        report.solver.wall_ms += stats.wall_ms;
        break;
      }
      case SchedulerKind::fnedf_discrete: {
        SolverStats stats;
        DiscreteStep step = fnedf_discrete_step(ts, jobs, t, bf, &stats);
        ++report.complete_checks;  // the step throws on an incomplete flow
        for (std::size_t r = 0; r < n; ++r) {
          if (step.x[r] < 0 || step.x[r] > l1)
            throw std::logic_error("discrete W_1 allocation out of range at t=" +
                                   std::to_string(t));
          x[r] = Rat(step.x[r]);
          ++report.integral_checks;
        }
        report.solver.iterations += stats.iterations;
        report.solver.augmentations += stats.augmentations;
        report.solver.wall_ms += stats.wall_ms;
        // Advance the reference schedule through the window just planned.
        run_bf(ts, bf, t);
        report.lag_checks += static_cast<std::int64_t>(n);
        break;
      }
    }

    // Dispatch in EDF order (earliest current deadline, then task id), so a
    // wrapped task is always the latest-deadline work on its processor pair.
    for (std::size_t r = 0; r < n; ++r) edf_rows[r] = r;
    std::sort(edf_rows.begin(), edf_rows.end(), [&](std::size_t a, std::size_t b) {
      if (jobs[a].deadline != jobs[b].deadline) return jobs[a].deadline < jobs[b].deadline;
      return a < b;
    });
    order.clear();
    for (std::size_t r : edf_rows)
      if (!x[r].is_zero()) order.emplace_back(ts.tasks()[r].id, x[r]);

    const std::vector<Segment> segments = mcnaughton(t, next, order, m);
    tracker.observe_window(segments);
    if (opts.collect_trace)
      for (const Segment& s : segments)
        report.trace.push_back({s.processor, s.task_id,
                                jobs[static_cast<std::size_t>(s.task_id - 1)].job_index, s.start,
                                s.end});

    for (std::size_t r = 0; r < n; ++r) {
      jobs[r].remaining = jobs[r].remaining - x[r];
      if (jobs[r].remaining < Rat(0))
        throw std::logic_error("task " + std::to_string(ts.tasks()[r].id) +
                               " over-allocated at t=" + std::to_string(t));
    }

    ++report.events;
    t = next;
  }

  // Jobs whose deadline coincides with the end of the run get no release to
  // flag them, so sweep for leftovers.
  for (std::size_t r = 0; r < n; ++r)
    if (jobs[r].job_index >= 0 && jobs[r].deadline <= t && jobs[r].remaining > Rat(0))
      report.misses.push_back({ts.tasks()[r].id, jobs[r].job_index, jobs[r].deadline,
                               jobs[r].remaining});

  report.horizon = t;
  report.metrics = tracker.counters();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace fnrt
