#include "fnrt/task_model.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fnrt {

TaskSet::TaskSet(std::vector<Task> tasks, int processors)
    : tasks_(std::move(tasks)), processors_(processors) {
  if (processors_ < 1) throw std::invalid_argument("TaskSet: processors must be >= 1");
  if (tasks_.empty()) throw std::invalid_argument("TaskSet: need at least one task");
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    Task& t = tasks_[i];
    if (t.id == 0) t.id = static_cast<int>(i) + 1;
    if (t.id != static_cast<int>(i) + 1)
      throw std::invalid_argument("TaskSet: task ids must be contiguous from 1");
    if (t.wcet < 1) throw std::invalid_argument("TaskSet: wcet must be >= 1");
    if (t.period < t.wcet)
      throw std::invalid_argument("TaskSet: period must be >= wcet (implicit deadline)");
  }
}

Rat TaskSet::total_utilization() const {
  Rat u = 0;
  for (const Task& t : tasks_) u += t.utilization();
  return u;
}

Time TaskSet::hyperperiod() const {
  Time h = 1;
  for (const Task& t : tasks_) h = checked_lcm(h, t.period);
  return h;
}

Time TaskSet::max_period() const {
  Time m = 0;
  for (const Task& t : tasks_) m = std::max(m, t.period);
  return m;
}

std::vector<Time> boundaries(const TaskSet& ts, const std::vector<JobState>& jobs,
                             Time t, TimeModel model) {
  std::vector<Time> b;
  b.push_back(t);
  Time d_max = t;
  for (const JobState& j : jobs) d_max = std::max(d_max, j.deadline);
  for (const JobState& j : jobs) b.push_back(j.deadline);
  if (model == TimeModel::discrete) {
    // Every deadline of every job — current and future — inside (t, d_max].
    // Arrivals sit on period multiples, so these are exactly the multiples of
    // each period in that range.
    for (const Task& task : ts.tasks()) {
      Time first = (t / task.period + 1) * task.period;
      for (Time m = first; m <= d_max; m += task.period) b.push_back(m);
    }
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

ActiveJobArea build_aja(const TaskSet& ts, const std::vector<JobState>& jobs,
                        Time t, TimeModel model) {
  ActiveJobArea aja;
  aja.now = t;
  aja.jobs = jobs;
  std::vector<Time> b = boundaries(ts, jobs, t, model);
  aja.d_max = b.back();
  for (std::size_t k = 1; k < b.size(); ++k)
    aja.windows.push_back(Window{static_cast<int>(k), b[k - 1], b[k], Rat(0)});
  return aja;
}

bool job_alive_in(const JobState& job, const Window& w) {
  return job.arrival <= w.start && w.end <= job.deadline;
}

std::vector<Rat> window_capacities_continuous(const ActiveJobArea& aja, const TaskSet& ts,
                                              bool clamp_negative) {
  std::vector<Rat> caps;
  caps.reserve(aja.windows.size());
  for (const Window& w : aja.windows) {
    // Reserve fluid bandwidth u_i for every task whose current job is not live
    // in this window; its successor jobs own that share of the processors.
    Rat reserved = 0;
    for (const JobState& j : aja.jobs)
      if (!job_alive_in(j, w)) reserved += ts.task(j.task_id).utilization();
    Rat cap = (Rat(ts.processors()) - reserved) * Rat(w.length());
    if (cap < Rat(0)) {
      if (!clamp_negative)
        throw std::logic_error("window_capacities_continuous: negative capacity (U > M?)");
      cap = Rat(0);
    }
    caps.push_back(cap);
  }
  return caps;
}

AllocMatrix fluid_allocation(const ActiveJobArea& aja, const TaskSet& ts) {
  AllocMatrix x(aja.jobs.size(), std::vector<Rat>(aja.windows.size(), Rat(0)));
  for (std::size_t i = 0; i < aja.jobs.size(); ++i) {
    Rat u = ts.task(aja.jobs[i].task_id).utilization();
    for (std::size_t k = 0; k < aja.windows.size(); ++k)
      if (job_alive_in(aja.jobs[i], aja.windows[k])) x[i][k] = u * Rat(aja.windows[k].length());
  }
  return x;
}

ConstraintReport check_constraints(const ActiveJobArea& aja, const AllocMatrix& x) {
  if (x.size() != aja.jobs.size())
    throw std::invalid_argument("check_constraints: row count must match aja.jobs");
  ConstraintReport report;
  const std::size_t kWindows = aja.windows.size();

  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != kWindows)
      throw std::invalid_argument("check_constraints: column count must match aja.windows");
    Rat total = 0;
    for (std::size_t k = 0; k < kWindows; ++k) {
      const Rat& v = x[i][k];
      total += v;
      // NIP: within the window length, and zero outside the job's live span.
      Rat limit = job_alive_in(aja.jobs[i], aja.windows[k]) ? Rat(aja.windows[k].length())
                                                            : Rat(0);
      if (v < Rat(0) || v > limit)
        report.violations.push_back({Violation::Kind::nip, static_cast<int>(i),
                                     static_cast<int>(k),
                                     v < Rat(0) ? -v : v - limit});
    }
    if (total != aja.jobs[i].remaining)
      report.violations.push_back({Violation::Kind::jcc, static_cast<int>(i), -1,
                                   abs(total - aja.jobs[i].remaining)});
  }

  for (std::size_t k = 0; k < kWindows; ++k) {
    Rat used = 0;
    for (std::size_t i = 0; i < x.size(); ++i) used += x[i][k];
    if (used > aja.windows[k].capacity)
      report.violations.push_back({Violation::Kind::pcc, -1, static_cast<int>(k),
                                   used - aja.windows[k].capacity});
  }
  return report;
}

TaskSet load_taskset(std::istream& in) {
  std::string line;
  int processors = 0;
  bool have_m = false;
  std::vector<Task> tasks;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;  // blank or comment-only line
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("taskset line " + std::to_string(lineno) + ": " + what);
    };
    if (!have_m) {
      if (key != "M") fail("expected 'M <int>' first");
      if (!(ls >> processors)) fail("bad processor count");
      have_m = true;
    } else {
      if (key != "C") fail("expected 'C <int> P <int>'");
      Task t;
      std::string p_key;
      if (!(ls >> t.wcet >> p_key >> t.period) || p_key != "P")
        fail("expected 'C <int> P <int>'");
      tasks.push_back(t);
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  if (!have_m) throw std::runtime_error("taskset: missing 'M <int>' line");
  return TaskSet(std::move(tasks), processors);
}

TaskSet load_taskset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open task set file: " + path);
  return load_taskset(in);
}

void save_taskset(const TaskSet& ts, std::ostream& out) {
  out << "M " << ts.processors() << "\n";
  for (const Task& t : ts.tasks()) out << "C " << t.wcet << " P " << t.period << "\n";
}

}  // namespace fnrt
