#include "fnrt/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fnrt/sim.hpp"
#include "fnrt/taskgen.hpp"

namespace fnrt {

namespace {

// splitmix64: decorrelates the per-set seeds derived from (seed, cfg, set).
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FNRT_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct SetJob {
  int cfg_index = 0;
  int processors = 0;
  int tasks = 0;
  int set_index = 0;
  std::uint64_t seed = 0;
};

std::string format_set_id(const SetJob& job) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "c%02d-m%d-n%02d-s%04d", job.cfg_index, job.processors,
                job.tasks, job.set_index);
  return buf;
}

ExperimentRow make_row(const SetJob& job, const TaskSet& ts, const char* scheduler,
                       const SimReport& report) {
  ExperimentRow row;
  row.set_id = format_set_id(job);
  row.scheduler = scheduler;
  row.model = "discrete";
  row.processors = ts.processors();
  row.tasks = ts.size();
  row.utilization = ts.total_utilization();
  row.preemptions = report.metrics.preemptions;
  row.migrations = report.metrics.migrations;
  row.jobs_completed = report.metrics.jobs_completed;
  row.deadline_misses = static_cast<std::int64_t>(report.misses.size());
  row.hyperperiod = ts.hyperperiod();
  row.wall_ms = report.wall_ms;
  return row;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.sets_per_config <= 0)
    throw std::invalid_argument("run_experiment: sets_per_config must be positive");

  std::vector<SetJob> jobs;
  int cfg_index = 0;
  for (int m : cfg.processor_counts) {
    for (const Rat& ratio : cfg.task_ratios) {
      // Round half up; ratios like 5/2 on odd processor counts need it.
      const std::int64_t n = (ratio * Rat(m) + Rat(1, 2)).floor();
      if (n < 1)
        throw std::invalid_argument("run_experiment: ratio " + ratio.str() +
                                    " gives no tasks for M=" + std::to_string(m));
      for (int s = 0; s < cfg.sets_per_config; ++s) {
        const std::uint64_t seed =
            mix(cfg.seed ^ mix(static_cast<std::uint64_t>(cfg_index) << 32 |
                               static_cast<std::uint64_t>(s)));
        jobs.push_back({cfg_index, m, static_cast<int>(n), s, seed});
      }
      ++cfg_index;
    }
  }

  std::vector<ExperimentRow> rows(jobs.size() * 2);
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_lock;

  auto work = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= jobs.size() || failed.load()) return;
      const SetJob& job = jobs[i];
      try {
        GenConfig gen;
        gen.processors = job.processors;
        gen.tasks = job.tasks;
        gen.period_lo = cfg.period_lo;
        gen.period_hi = cfg.period_hi;
        gen.hyperperiod_cap = cfg.hyperperiod_cap;
        gen.seed = job.seed;
        const TaskSet ts = gen_taskset(gen);

        rows[2 * i] = make_row(job, ts, "bf", run(ts, SchedulerKind::bf_baseline));
        rows[2 * i + 1] = make_row(job, ts, "fnedf", run(ts, SchedulerKind::fnedf_discrete));
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> guard(error_lock);
        if (!failed.exchange(true))
          first_error = "set " + format_set_id(job) + ": " + e.what();
      }
    }
  };

  const int workers = std::min<int>(resolve_workers(cfg.workers),
                                    static_cast<int>(jobs.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("run_experiment: " + first_error);
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows, bool include_timing) {
  std::ostringstream out;
  out << "set_id,scheduler,model,M,N,U,U_dec,preempt_per_job,migrate_per_job,"
         "deadline_misses,hyperperiod";
  if (include_timing) out << ",wall_ms";
  out << "\n";

  for (const auto& row : rows) {
    const Rat per_preempt =
        row.jobs_completed > 0 ? Rat(row.preemptions, row.jobs_completed) : Rat(0);
    const Rat per_migrate =
        row.jobs_completed > 0 ? Rat(row.migrations, row.jobs_completed) : Rat(0);
    out << row.set_id << ',' << row.scheduler << ',' << row.model << ',' << row.processors
        << ',' << row.tasks << ',' << row.utilization.str() << ','
        << row.utilization.decimals(6) << ',' << per_preempt.decimals(6) << ','
        << per_migrate.decimals(6) << ',' << row.deadline_misses << ',' << row.hyperperiod;
    if (include_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", row.wall_ms);
      out << ',' << buf;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fnrt
