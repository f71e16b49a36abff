#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fnrt/task_model.hpp"

namespace fnrt {

// One contiguous run of a task on one processor; [start, end) in absolute
// time, rational because continuous-model allocations are.
struct Segment {
  int processor = 0;
  int task_id = 0;
  Rat start;
  Rat end;
};

struct MetricCounters {
  std::int64_t preemptions = 0;
  std::int64_t migrations = 0;
  std::int64_t jobs_completed = 0;
};

// Dispatch order matters for who gets wrapped; the simulator passes EDF order.
using OrderedAlloc = std::vector<std::pair<int, Rat>>;  // (task_id, allocation)

// McNaughton wrap-around: fill processor 0 left to right, spill the overflow
// of a split task to the start of the next processor. Requires each
// allocation in [0, window length] and a total of at most M * length; no task
// ever overlaps itself because the two pieces of a split cover disjoint
// sub-intervals of the window.
std::vector<Segment> mcnaughton(Time window_start, Time window_end, const OrderedAlloc& alloc,
                                int processors);

// Execution continuity for one task's in-flight job, carried across windows
// so a window boundary alone never counts as a preemption.
struct JobExec {
  int job_index = -1;  // -1: nothing released yet
  Rat remaining;
  bool stopped = false;  // halted with work left, awaiting resumption
  int last_proc = -1;
  Rat last_end;
};
using JobTable = std::vector<JobExec>;  // row = task_id - 1

// Counts preemptions, migrations, and completions from dispatched segments.
// A resumption costs a preemption unless it continues seamlessly (same
// processor, abutting in time), and a migration whenever the processor
// changed; both independent of segment emission order.
class MetricsTracker {
 public:
  explicit MetricsTracker(std::size_t n_tasks) : table_(n_tasks) {}
  explicit MetricsTracker(JobTable seed) : table_(std::move(seed)) {}

  void release(int task_id, int job_index, Rat wcet);
  void observe_window(const std::vector<Segment>& segments);
  void reset_counters() { counters_ = {}; }

  const MetricCounters& counters() const { return counters_; }
  const JobTable& table() const { return table_; }

 private:
  MetricCounters counters_;
  JobTable table_;
};

// One-shot form: seeds continuity from `prev` without counting, then counts
// `cur`. `table` carries job identities and remaining work as of prev's start.
MetricCounters count_metrics(const std::vector<Segment>& prev, const std::vector<Segment>& cur,
                             JobTable table);

}  // namespace fnrt
