#include "fnrt/dispatch.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fnrt {

std::vector<Segment> mcnaughton(Time window_start, Time window_end, const OrderedAlloc& alloc,
                                int processors) {
  if (window_end <= window_start)
    throw std::invalid_argument("mcnaughton: empty window");
  const Rat length(window_end - window_start);
  Rat total;
  for (const auto& [task_id, x] : alloc) {
    if (x < Rat(0) || x > length)
      throw std::invalid_argument("mcnaughton: allocation " + x.str() + " for task " +
                                  std::to_string(task_id) + " outside [0, " + length.str() + "]");
    total = total + x;
  }
  if (total > Rat(processors) * length)
    throw std::invalid_argument("mcnaughton: total allocation " + total.str() + " exceeds " +
                                std::to_string(processors) + " * " + length.str());

  std::vector<Segment> out;
  const Rat start(window_start), end(window_end);
  int p = 0;
  Rat fill;
  for (const auto& [task_id, x] : alloc) {
    if (x.is_zero()) continue;
    if (p >= processors)
      throw std::logic_error("mcnaughton: ran out of processors");  // barred by the total check
    if (fill + x <= length) {
      out.push_back({p, task_id, start + fill, start + fill + x});
      fill = fill + x;
      if (fill == length) {
        ++p;
        fill = Rat(0);
      }
    } else {
      // Split: the tail rides out this processor, the head wraps to the next
      // one from the window start. Head ends at start+fill' <= the tail's
      // begin, so the two pieces never overlap in time.
      const Rat head = x - (length - fill);
      if (p + 1 >= processors) throw std::logic_error("mcnaughton: wrap past last processor");
      out.push_back({p, task_id, start + fill, end});
      out.push_back({p + 1, task_id, start, start + head});
      ++p;
      fill = head;
    }
  }
  return out;
}

void MetricsTracker::release(int task_id, int job_index, Rat wcet) {
  JobExec& rec = table_.at(static_cast<std::size_t>(task_id - 1));
  rec.job_index = job_index;
  rec.remaining = wcet;
  rec.stopped = false;
  rec.last_proc = -1;
  rec.last_end = Rat(0);
}

void MetricsTracker::observe_window(const std::vector<Segment>& segments) {
  // Canonical order: per task by start time, so counting is independent of
  // how the dispatcher happened to emit the segments.
  std::vector<Segment> sorted = segments;
  std::sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) {
    if (a.task_id != b.task_id) return a.task_id < b.task_id;
    return a.start < b.start;
  });

  for (const Segment& seg : sorted) {
    if (seg.end <= seg.start) continue;
    JobExec& rec = table_.at(static_cast<std::size_t>(seg.task_id - 1));
    if (rec.job_index < 0)
      throw std::logic_error("metrics: segment for task " + std::to_string(seg.task_id) +
                             " before any release");

    if (rec.stopped) {
      const bool seamless = rec.last_proc == seg.processor && rec.last_end == seg.start;
      if (!seamless) ++counters_.preemptions;
      if (rec.last_proc != seg.processor) ++counters_.migrations;
    }

    rec.remaining = rec.remaining - (seg.end - seg.start);
    if (rec.remaining < Rat(0))
      throw std::logic_error("metrics: task " + std::to_string(seg.task_id) +
                             " ran past its remaining work");
    rec.last_proc = seg.processor;
    rec.last_end = seg.end;
    if (rec.remaining.is_zero()) {
      ++counters_.jobs_completed;
      rec.stopped = false;
    } else {
      rec.stopped = true;
    }
  }
}

MetricCounters count_metrics(const std::vector<Segment>& prev, const std::vector<Segment>& cur,
                             JobTable table) {
  MetricsTracker tracker(std::move(table));
  tracker.observe_window(prev);
  tracker.reset_counters();
  tracker.observe_window(cur);
  return tracker.counters();
}

}  // namespace fnrt
