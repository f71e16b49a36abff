#include "fnrt/taskgen.hpp"

#include <algorithm>
#include <stdexcept>

namespace fnrt {

std::vector<Rat> fixed_sum_utilizations(int n, const Rat& total, const Rat& lo, const Rat& hi,
                                        std::mt19937_64& rng) {
  if (n <= 0) throw std::invalid_argument("fixed_sum_utilizations: need at least one task");
  // Work in units of 1/grid so sums are exact; the grid is fine enough that
  // the target and roughly four decimal digits of a share are representable.
  const std::int64_t q = (10000 + total.den() - 1) / total.den();
  const std::int64_t grid = total.den() * q;
  const std::int64_t lo_units = (lo * Rat(grid)).floor() + 1;  // strict lower bound
  const std::int64_t hi_units = (hi * Rat(grid)).floor();
  std::int64_t left = total.num() * q;

  if (lo_units > hi_units || left < n * lo_units || left > n * hi_units)
    throw std::invalid_argument("fixed_sum_utilizations: sum " + total.str() +
                                " unreachable with " + std::to_string(n) + " tasks in (" +
                                lo.str() + ", " + hi.str() + "]");

  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::int64_t rest = n - 1 - i;
    const std::int64_t floor_i = std::max(lo_units, left - rest * hi_units);
    const std::int64_t ceil_i = std::min(hi_units, left - rest * lo_units);
    std::uniform_int_distribution<std::int64_t> pick(floor_i, ceil_i);
    const std::int64_t share = pick(rng);
    out.push_back(Rat(share, grid));
    left -= share;
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

TaskSet gen_taskset(const GenConfig& cfg) {
  if (cfg.tasks <= 0 || cfg.processors <= 0)
    throw std::invalid_argument("gen_taskset: need positive task and processor counts");
  if (cfg.period_lo < 1 || cfg.period_hi < cfg.period_lo)
    throw std::invalid_argument("gen_taskset: bad period range");
  const Rat u_target = cfg.u_target.is_zero() ? Rat(cfg.processors) : cfg.u_target;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<Time> pick_period(cfg.period_lo, cfg.period_hi);

  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    std::vector<Time> periods(static_cast<std::size_t>(cfg.tasks));
    for (auto& p : periods) p = pick_period(rng);

    // Wholesale redraw on an oversized hyperperiod: conditioning individual
    // periods instead would skew the joint distribution.
    Time h = 1;
    bool fits = true;
    try {
      for (Time p : periods) {
        h = checked_lcm(h, p);
        if (h > cfg.hyperperiod_cap) {
          fits = false;
          break;
        }
      }
    } catch (const std::overflow_error&) {
      fits = false;
    }
    if (!fits) continue;

    const std::vector<Rat> utils =
        fixed_sum_utilizations(cfg.tasks, u_target, Rat(0), Rat(1), rng);

    std::vector<Task> tasks;
    tasks.reserve(periods.size());
    Rat total;
    for (std::size_t r = 0; r < periods.size(); ++r) {
      const Time wcet = std::max<Time>(1, (utils[r] * Rat(periods[r])).floor());
      tasks.push_back({static_cast<int>(r) + 1, wcet, periods[r]});
      total = total + Rat(wcet, periods[r]);
    }
    // Flooring only lowers a share; the max(1, ...) clamp can raise one. Toss
    // the rare draw that ends up above target.
    if (total > u_target) continue;

    return TaskSet(std::move(tasks), cfg.processors);
  }
  throw std::runtime_error("gen_taskset: no task set under hyperperiod cap " +
                           std::to_string(cfg.hyperperiod_cap) + " after " +
                           std::to_string(cfg.max_retries) + " attempts");
}

}  // namespace fnrt
