#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fnrt/rational.hpp"

namespace fnrt {

using Time = std::int64_t;

// Periodic implicit-deadline task: releases a job every `period` units, each
// job needs `wcet` units before the next release. Utilization C/P is exact.
struct Task {
  int id = 0;  // 1-based, contiguous within a TaskSet
  Time wcet = 0;
  Time period = 0;

  Rat utilization() const { return Rat(wcet, period); }
};

class TaskSet {
 public:
  TaskSet(std::vector<Task> tasks, int processors);

  const std::vector<Task>& tasks() const { return tasks_; }
  const Task& task(int id) const { return tasks_.at(static_cast<std::size_t>(id) - 1); }
  int size() const { return static_cast<int>(tasks_.size()); }
  int processors() const { return processors_; }

  Rat total_utilization() const;
  Time hyperperiod() const;  // lcm of all periods; throws std::overflow_error
  Time max_period() const;

 private:
  std::vector<Task> tasks_;
  int processors_ = 0;
};

// Snapshot of one task's current job. `remaining` may be rational on the
// continuous model; arrivals and deadlines are always integral.
struct JobState {
  int task_id = 0;
  int job_index = 0;  // 0-based: arrival == job_index * period
  Time arrival = 0;
  Time deadline = 0;
  Rat remaining;
};

enum class TimeModel { continuous, discrete };

// Interval between two adjacent boundaries, half-open [start, end).
struct Window {
  int index = 0;  // 1-based, local to its AJA
  Time start = 0;
  Time end = 0;
  Rat capacity;  // Cap(W_k), filled by the model-specific capacity rule

  Time length() const { return end - start; }
};

// Everything a scheduler sees at a boundary t: the current jobs, the windows
// tiling [t, d_max], and (once assigned) the per-window capacities.
struct ActiveJobArea {
  Time now = 0;
  Time d_max = 0;
  std::vector<JobState> jobs;  // one entry per task, completed jobs included
  std::vector<Window> windows;
};

// Allocation matrix: rows follow aja.jobs, columns follow aja.windows.
using AllocMatrix = std::vector<std::vector<Rat>>;

// Boundary set at time t. Continuous model: {t} plus the active deadlines.
// Discrete model: additionally every deadline of future jobs inside (t, d_max]
// (i.e. all period multiples in that range). Sorted, deduplicated, starts at t.
std::vector<Time> boundaries(const TaskSet& ts, const std::vector<JobState>& jobs,
                             Time t, TimeModel model);

// Builds the AJA skeleton (windows carry zero capacity until a capacity rule
// fills them). `jobs` must hold each task's current job at t.
ActiveJobArea build_aja(const TaskSet& ts, const std::vector<JobState>& jobs,
                        Time t, TimeModel model);

// True iff the job's window [arrival, deadline] fully covers window w.
bool job_alive_in(const JobState& job, const Window& w);

// Continuous-model capacities: Cap(W_k) = [M − Σ_{i ∉ J(k,t)} u_i] × l_k, the
// fluid bandwidth left after reserving every task that is not live in W_k.
// Negative capacity means U > M; `clamp_negative` turns that into 0 for
// diagnostic runs, the default throws.
std::vector<Rat> window_capacities_continuous(const ActiveJobArea& aja, const TaskSet& ts,
                                              bool clamp_negative = false);

// Fluid allocation: X_{i,k} = u_i × l_k on every window the job is live in.
AllocMatrix fluid_allocation(const ActiveJobArea& aja, const TaskSet& ts);

struct Violation {
  enum class Kind { jcc, pcc, nip };
  Kind kind;
  int job;     // row into aja.jobs (-1 for pcc)
  int window;  // column into aja.windows (-1 for jcc)
  Rat slack;   // amount by which the constraint is broken
};

struct ConstraintReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// JCC as equality (Σ_k X_{i,k} = c_i), PCC (Σ_i X_{i,k} ≤ Cap(W_k)), NIP
// (0 ≤ X_{i,k} ≤ l_k, and 0 on windows the job is not live in).
ConstraintReport check_constraints(const ActiveJobArea& aja, const AllocMatrix& x);

// Task set text format: `# comment` lines, `M <int>`, then one `C <int> P <int>`
// line per task. Integers only.
TaskSet load_taskset(std::istream& in);
TaskSet load_taskset_file(const std::string& path);
void save_taskset(const TaskSet& ts, std::ostream& out);

}  // namespace fnrt
