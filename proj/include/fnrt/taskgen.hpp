#pragma once

#include <cstdint>
#include <random>

#include "fnrt/task_model.hpp"

namespace fnrt {

struct GenConfig {
  int processors = 2;
  int tasks = 4;
  Time period_lo = 5;
  Time period_hi = 20;
  Rat u_target;  // zero: defaults to the processor count
  Time hyperperiod_cap = 600000;
  std::uint64_t seed = 1;
  int max_retries = 100000;
};

// n utilizations summing exactly to `total`, each in (lo, hi], drawn on an
// integer grid by sequential conditional sampling (every draw keeps the
// remainder reachable, so the sum is exact by construction), then shuffled so
// position carries no bias. Throws std::invalid_argument when no such vector
// exists.
std::vector<Rat> fixed_sum_utilizations(int n, const Rat& total, const Rat& lo, const Rat& hi,
                                        std::mt19937_64& rng);

// Random task set: periods uniform on [period_lo, period_hi], redrawn
// wholesale until the hyperperiod fits the cap; utilizations from
// fixed_sum_utilizations; C_i = max(1, floor(u_i * P_i)), re-rolled if the
// flooring pushed the total above u_target. Reproducible from the seed.
TaskSet gen_taskset(const GenConfig& cfg);

}  // namespace fnrt
