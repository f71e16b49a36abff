#include "fnrt/bf.hpp"

#include <algorithm>
#include <limits>

namespace fnrt {

BfState make_bf_state(const TaskSet& ts) {
  BfState state;
  state.allocated.assign(ts.size(), 0);
  return state;
}

Time next_all_jobs_boundary(const TaskSet& ts, Time b) {
  Time next = std::numeric_limits<Time>::max();
  for (const auto& task : ts.tasks())
    next = std::min(next, (b / task.period + 1) * task.period);
  return next;
}

Rat bf_lag(const TaskSet& ts, const BfState& state, int task_id) {
  const Task& task = ts.task(task_id);
  const std::int64_t alloc = state.allocated[static_cast<std::size_t>(task_id - 1)];
  return Rat(task.wcet * state.boundary - alloc * task.period, task.period);
}

std::vector<std::int64_t> run_bf(const TaskSet& ts, BfState& state, Time b) {
  if (state.boundary != b)
    throw std::logic_error("run_bf: state is at boundary " + std::to_string(state.boundary) +
                           ", not " + std::to_string(b));
  const Time b2 = next_all_jobs_boundary(ts, b);
  const Time l = b2 - b;
  const std::int64_t quota = static_cast<std::int64_t>(ts.processors()) * l;
  const std::size_t n = ts.size();

  std::vector<std::int64_t> units(n, 0);
  // Per-task lag numerator at b2 (over denominator P_i) and leftovers after
  // the mandatory floor; optional ranking works on these.
  std::vector<std::int64_t> frac(n, 0), pending(n, 0);
  std::vector<std::size_t> eligible;
  std::int64_t granted = 0, pending_total = 0;

  for (std::size_t r = 0; r < n; ++r) {
    const Task& task = ts.tasks()[r];
    const std::int64_t alloc = state.allocated[r];
    pending[r] = (b / task.period + 1) * task.wcet - alloc;
    pending_total += pending[r];
    const std::int64_t diff = task.wcet * b2 - alloc * task.period;  // lag(b2) * P_i
    std::int64_t m = diff > 0 ? diff / task.period : 0;
    m = std::min({m, l, pending[r]});
    units[r] = m;
    granted += m;
    frac[r] = diff - m * task.period;
    if (diff > 0 && frac[r] > 0 && m + 1 <= l && m + 1 <= pending[r]) eligible.push_back(r);
  }

  if (granted > quota)
    throw BfInfeasible("run_bf: mandatory units " + std::to_string(granted) + " exceed " +
                       std::to_string(quota) + " at boundary " + std::to_string(b));

  // Most-behind first: larger fractional lag, then earlier current deadline,
  // then lower task id. Fractions compare by cross-multiplication.
  std::sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t c) {
    const Time pa = ts.tasks()[a].period, pc = ts.tasks()[c].period;
    const __int128 left = static_cast<__int128>(frac[a]) * pc;
    const __int128 right = static_cast<__int128>(frac[c]) * pa;
    if (left != right) return left > right;
    const Time da = (b / pa + 1) * pa, dc = (b / pc + 1) * pc;
    if (da != dc) return da < dc;
    return a < c;
  });
  std::int64_t spare = std::min(quota, pending_total) - granted;
  for (std::size_t r : eligible) {
    if (spare <= 0) break;
    ++units[r];
    --spare;
  }

  for (std::size_t r = 0; r < n; ++r) {
    state.allocated[r] += units[r];
    const Task& task = ts.tasks()[r];
    const std::int64_t post = task.wcet * b2 - state.allocated[r] * task.period;
    if (post <= -task.period || post >= task.period)
      throw std::logic_error("run_bf: lag bound broken for task " + std::to_string(task.id) +
                             " at boundary " + std::to_string(b2));
  }
  state.boundary = b2;
  ++state.windows_run;
  return units;
}

std::vector<std::int64_t> compute_window_capacities_discrete(const TaskSet& ts,
                                                             const BfState& reference, Time t,
                                                             const std::vector<Time>& boundaries) {
  if (reference.boundary != t)
    throw std::logic_error("compute_window_capacities_discrete: reference is at " +
                           std::to_string(reference.boundary) + ", not " + std::to_string(t));
  if (boundaries.size() < 2 || boundaries.front() != t)
    throw std::invalid_argument("compute_window_capacities_discrete: bad boundary grid");

  const std::size_t n = ts.size();
  std::vector<Time> deadline(n);
  for (std::size_t r = 0; r < n; ++r) {
    const Time p = ts.tasks()[r].period;
    deadline[r] = (t / p + 1) * p;
  }

  BfState clone = reference;
  std::vector<std::int64_t> caps;
  caps.reserve(boundaries.size() - 1);
  for (std::size_t k = 1; k < boundaries.size(); ++k) {
    const std::vector<std::int64_t> s = run_bf(ts, clone, boundaries[k - 1]);
    if (clone.boundary != boundaries[k])
      throw std::logic_error("compute_window_capacities_discrete: grid skips boundary " +
                             std::to_string(clone.boundary));
    // Units the reference schedule spends on jobs past their current
    // deadline are spoken for; only the rest serves the active jobs.
    std::int64_t cap =
        static_cast<std::int64_t>(ts.processors()) * (boundaries[k] - boundaries[k - 1]);
    for (std::size_t r = 0; r < n; ++r)
      if (boundaries[k - 1] >= deadline[r]) cap -= s[r];
    caps.push_back(cap);
  }
  return caps;
}

BfState bf_state_at(const TaskSet& ts, Time t) {
  BfState state = make_bf_state(ts);
  while (state.boundary < t) run_bf(ts, state, state.boundary);
  if (state.boundary != t)
    throw std::invalid_argument("bf_state_at: " + std::to_string(t) + " is not on the boundary grid");
  return state;
}

}  // namespace fnrt
