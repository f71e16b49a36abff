#pragma once

#include "fnrt/task_model.hpp"

namespace fnrt::testing {

// Fully utilized five-task set on two processors (U = 2, H = 18). Its first
// scheduling window is worked out by hand in several tests: discrete and
// continuous capacities both come to (6, 4, 2), the boundary-fair window
// allocation is {2,1,1,1,1}, and the min-cost W_1 allocation is {2,2,2,0,0}.
inline TaskSet two_proc_full() {
  return TaskSet({{1, 2, 3}, {2, 2, 6}, {3, 2, 6}, {4, 3, 9}, {5, 3, 9}}, 2);
}

// Same period structure with slack (U = 11/9 < 2); exercises the paths where
// the sink edges need not saturate.
inline TaskSet two_proc_slack() {
  return TaskSet({{1, 1, 3}, {2, 2, 6}, {3, 2, 6}, {4, 1, 9}, {5, 1, 9}}, 2);
}

// Current jobs of every task at a boundary t, nothing executed yet in the
// current period (fresh remaining). Good enough for step-level tests.
inline std::vector<JobState> fresh_jobs(const TaskSet& ts, Time t) {
  std::vector<JobState> jobs;
  for (const auto& task : ts.tasks()) {
    const int j = static_cast<int>(t / task.period);
    jobs.push_back({task.id, j, j * task.period, (j + 1) * task.period, Rat(task.wcet)});
  }
  return jobs;
}

}  // namespace fnrt::testing
