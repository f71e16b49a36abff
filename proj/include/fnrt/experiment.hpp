#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fnrt/task_model.hpp"

namespace fnrt {

// Batch comparison of the flow scheduler (discrete model) against the
// boundary-fair baseline on the same generated sets.
struct ExperimentConfig {
  std::vector<int> processor_counts{2, 4};
  std::vector<Rat> task_ratios{Rat(4)};  // tasks = ratio * processors, rounded
  int sets_per_config = 100;
  std::uint64_t seed = 1;
  Time period_lo = 5;
  Time period_hi = 20;
  Time hyperperiod_cap = 20000;
  bool include_timing = false;  // wall_ms column; off by default, it breaks
                                // byte-for-byte reproducibility
  int workers = 0;  // 0: FNRT_WORKERS env var, else hardware concurrency
};

struct ExperimentRow {
  std::string set_id;
  std::string scheduler;  // "bf" or "fnedf"
  std::string model;      // "discrete"
  int processors = 0;
  int tasks = 0;
  Rat utilization;
  std::int64_t preemptions = 0;
  std::int64_t migrations = 0;
  std::int64_t jobs_completed = 0;
  std::int64_t deadline_misses = 0;
  Time hyperperiod = 0;
  double wall_ms = 0.0;
};

// Two rows (bf first, then fnedf) per generated set, in config-then-set
// order. Per-set seeds are derived from the config seed alone, so the worker
// count never changes the results.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

// Rows as CSV. Utilization appears twice: exact ("39/20") and as a fixed
// six-place decimal; per-job rates are exact decimals too.
std::string experiment_csv(const std::vector<ExperimentRow>& rows, bool include_timing);

}  // namespace fnrt
