#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fnrt/task_model.hpp"

namespace fnrt {

// Raised when a window's mandatory units alone exceed M * l, which cannot
// happen for U <= M and means the caller fed an over-utilized set.
class BfInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cumulative allocation ledger for the boundary-fair scheduler. All
// arithmetic is integral: lag_i = u_i*b - allocated_i is compared via the
// numerator D_i = C_i*b - allocated_i*P_i over the common denominator P_i.
struct BfState {
  Time boundary = 0;
  std::vector<std::int64_t> allocated;  // row = task_id - 1, total units so far
  std::int64_t windows_run = 0;
};

BfState make_bf_state(const TaskSet& ts);

// Earliest multiple of any period strictly after b: the next boundary.
Time next_all_jobs_boundary(const TaskSet& ts, Time b);

// Fluid entitlement minus actual allocation at the state's boundary.
Rat bf_lag(const TaskSet& ts, const BfState& state, int task_id);

// One window [b, next boundary): mandatory units floor(u_i*b' - allocated_i),
// then one optional unit each to the (remaining-capacity) most-behind
// eligible tasks, largest fractional lag first, ties by earlier deadline then
// lower id. Returns per-task units for the window and advances the state.
// Throws std::logic_error when state.boundary != b, BfInfeasible on
// over-utilization, std::logic_error if any post-window |lag| >= 1.
std::vector<std::int64_t> run_bf(const TaskSet& ts, BfState& state, Time b);

// Discrete window capacities Cap(W_k) = l_k*M - (units the reference BF
// schedule hands inside W_k to jobs beyond their current deadline).
// `boundaries` is the event grid from boundaries(..., discrete): B[0] = t.
// The reference state is cloned; the caller's state is untouched.
std::vector<std::int64_t> compute_window_capacities_discrete(const TaskSet& ts,
                                                             const BfState& reference, Time t,
                                                             const std::vector<Time>& boundaries);

// Replays BF from time 0 to boundary t (t must lie on the boundary grid).
BfState bf_state_at(const TaskSet& ts, Time t);

// The scheduler-facing alias: BF's allocation for the window starting at the
// state's boundary.
inline std::vector<std::int64_t> bf_scheduler_step(const TaskSet& ts, BfState& state) {
  return run_bf(ts, state, state.boundary);
}

}  // namespace fnrt
