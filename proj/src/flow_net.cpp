#include "fnrt/flow_net.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fnrt {

NodeId FlowNetwork::node(int id) const {
  if (id == kSource) return {NodeId::Kind::source, 0};
  if (id == kSink) return {NodeId::Kind::sink, 0};
  const int n_jobs = static_cast<int>(jobs.size());
  if (id < 2 + n_jobs) return {NodeId::Kind::job, id - 2};
  const int k = id - 2 - n_jobs + 1;
  if (k > static_cast<int>(windows.size()))
    throw std::out_of_range("FlowNetwork::node: id " + std::to_string(id) + " out of range");
  return {NodeId::Kind::window, k};
}

Rat FlowNetwork::demand() const {
  Rat total;
  for (const auto& e : edges)
    if (e.from == kSource) total = total + e.capacity;
  return total;
}

int FlowNetwork::edge_between(int from, int to) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].from == from && edges[i].to == to) return static_cast<int>(i);
  return -1;
}

namespace {

// Shared FNRT assembly. Job rows are EDF-ordered (deadline, then task id);
// with_costs selects the EDF cost profile over the zero-cost one.
FlowNetwork assemble(const ActiveJobArea& aja, const std::vector<Rat>& capacities,
                     bool with_costs) {
  if (capacities.size() != aja.windows.size())
    throw std::invalid_argument("assemble: expected " + std::to_string(aja.windows.size()) +
                                " window capacities, got " + std::to_string(capacities.size()));

  FlowNetwork net;
  net.windows = aja.windows;
  for (std::size_t k = 0; k < capacities.size(); ++k) {
    if (capacities[k] < Rat(0))
      throw std::invalid_argument("assemble: negative capacity on window " +
                                  std::to_string(k + 1));
    net.windows[k].capacity = capacities[k];
  }

  for (const auto& job : aja.jobs)
    if (!job.remaining.is_zero())
      net.jobs.push_back({job.task_id, job.job_index, job.arrival, job.deadline});
  std::sort(net.jobs.begin(), net.jobs.end(), [](const FlowJob& a, const FlowJob& b) {
    if (a.deadline != b.deadline) return a.deadline < b.deadline;
    return a.task_id < b.task_id;
  });

  const int n_jobs = static_cast<int>(net.jobs.size());
  for (int row = 0; row < n_jobs; ++row) {
    Rat remaining;
    for (const auto& job : aja.jobs)
      if (job.task_id == net.jobs[row].task_id) remaining = job.remaining;
    net.edges.push_back({FlowNetwork::kSource, net.job_node(row), remaining, with_costs ? 1 : 0});
  }
  for (int row = 0; row < n_jobs; ++row) {
    const FlowJob& job = net.jobs[row];
    for (const auto& w : net.windows) {
      if (!(w.start >= job.arrival && w.end <= job.deadline)) continue;
      // W_1 cost is the EDF rank; later windows cost n_jobs + k - 1, which
      // exceeds every rank, so work prefers W_1 and drains earliest-deadline
      // jobs first when it must spill.
      const int cost = !with_costs ? 0 : (w.index == 1 ? row + 1 : n_jobs + w.index - 1);
      net.edges.push_back({net.job_node(row), net.window_node(w.index), Rat(w.length()), cost});
    }
  }
  for (const auto& w : net.windows)
    net.edges.push_back({net.window_node(w.index), FlowNetwork::kSink, w.capacity,
                         with_costs ? 1 : 0});
  return net;
}

}  // namespace

FlowNetwork build_fnrt(const ActiveJobArea& aja, const std::vector<Rat>& capacities) {
  return assemble(aja, capacities, false);
}

FlowNetwork build_fnrt_edf(const ActiveJobArea& aja, const std::vector<Rat>& capacities) {
  return assemble(aja, capacities, true);
}

FlowNetwork build_full_horizon(const TaskSet& ts, std::int64_t node_budget) {
  const Time horizon = ts.hyperperiod();

  std::int64_t n_jobs = 0;
  for (const auto& task : ts.tasks()) n_jobs += horizon / task.period;

  std::vector<Time> bounds;
  for (const auto& task : ts.tasks())
    for (Time b = 0; b <= horizon; b += task.period) bounds.push_back(b);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  const std::int64_t n_windows = static_cast<std::int64_t>(bounds.size()) - 1;

  if (2 + n_jobs + n_windows > node_budget)
    throw std::length_error("build_full_horizon: network needs " +
                            std::to_string(2 + n_jobs + n_windows) + " nodes, budget is " +
                            std::to_string(node_budget));

  FlowNetwork net;
  for (std::size_t k = 1; k < bounds.size(); ++k)
    net.windows.push_back({static_cast<int>(k), bounds[k - 1], bounds[k], Rat(0)});

  for (const auto& task : ts.tasks())
    for (Time j = 0; j < horizon / task.period; ++j)
      net.jobs.push_back({task.id, static_cast<int>(j), j * task.period, (j + 1) * task.period});
  std::sort(net.jobs.begin(), net.jobs.end(), [](const FlowJob& a, const FlowJob& b) {
    if (a.deadline != b.deadline) return a.deadline < b.deadline;
    if (a.task_id != b.task_id) return a.task_id < b.task_id;
    return a.job_index < b.job_index;
  });

  for (std::size_t row = 0; row < net.jobs.size(); ++row)
    net.edges.push_back({FlowNetwork::kSource, net.job_node(static_cast<int>(row)),
                         Rat(ts.task(net.jobs[row].task_id).wcet), 0});
  for (std::size_t row = 0; row < net.jobs.size(); ++row) {
    const FlowJob& job = net.jobs[row];
    // Window boundaries include every multiple of every period, so windows
    // never straddle a job's arrival or deadline: containment is a range scan.
    for (const auto& w : net.windows) {
      if (w.end <= job.arrival) continue;
      if (w.end > job.deadline) break;
      net.edges.push_back({net.job_node(static_cast<int>(row)), net.window_node(w.index),
                           Rat(w.length()), 0});
    }
  }
  for (auto& w : net.windows) {
    w.capacity = Rat(ts.processors()) * Rat(w.length());
    net.edges.push_back({net.window_node(w.index), FlowNetwork::kSink, w.capacity, 0});
  }
  return net;
}

std::pair<FlowNetwork, std::int64_t> scale_to_integers(const FlowNetwork& net) {
  std::int64_t factor = 1;
  for (const auto& e : net.edges) factor = checked_lcm(factor, e.capacity.den());

  FlowNetwork scaled = net;
  for (auto& e : scaled.edges) e.capacity = e.capacity * Rat(factor);
  for (auto& w : scaled.windows) w.capacity = w.capacity * Rat(factor);
  return {std::move(scaled), factor};
}

FlowResult unscale(const FlowResult& result, std::int64_t factor) {
  FlowResult out;
  out.total = result.total / Rat(factor);
  out.flow.reserve(result.flow.size());
  for (const auto& f : result.flow) out.flow.push_back(f / Rat(factor));
  return out;
}

int cost_slope(const FlowNetwork& net, int task_id, int k) {
  int row = -1;
  for (std::size_t i = 0; i < net.jobs.size(); ++i)
    if (net.jobs[i].task_id == task_id) row = static_cast<int>(i);
  if (row < 0)
    throw std::out_of_range("cost_slope: task " + std::to_string(task_id) +
                            " has no job node");
  const int lo = net.edge_between(net.job_node(row), net.window_node(k));
  const int hi = net.edge_between(net.job_node(row), net.window_node(k + 1));
  if (lo < 0 || hi < 0)
    throw std::out_of_range("cost_slope: task " + std::to_string(task_id) +
                            " has no edge into window " + std::to_string(lo < 0 ? k : k + 1));
  return net.edges[hi].cost - net.edges[lo].cost;
}

std::vector<Rat> w1_allocations(const FlowNetwork& net, const FlowResult& result, int n_tasks) {
  if (result.flow.size() != net.edges.size())
    throw std::invalid_argument("w1_allocations: result does not match network");
  std::vector<Rat> x(static_cast<std::size_t>(n_tasks));
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const FlowEdge& e = net.edges[i];
    if (e.from < 2 || net.node(e.from).kind != NodeId::Kind::job) continue;
    if (e.to != net.window_node(1)) continue;
    const int task_id = net.jobs[net.node(e.from).index].task_id;
    x[task_id - 1] = x[task_id - 1] + result.flow[i];
  }
  return x;
}

AllocMatrix x_flows(const FlowNetwork& net, const FlowResult& result) {
  if (result.flow.size() != net.edges.size())
    throw std::invalid_argument("x_flows: result does not match network");
  AllocMatrix x(net.jobs.size(), std::vector<Rat>(net.windows.size()));
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const FlowEdge& e = net.edges[i];
    if (e.from < 2 || e.to < 2) continue;
    const NodeId from = net.node(e.from);
    const NodeId to = net.node(e.to);
    if (from.kind != NodeId::Kind::job || to.kind != NodeId::Kind::window) continue;
    x[from.index][to.index - 1] = result.flow[i];
  }
  return x;
}

std::string to_dimacs(const FlowNetwork& net) {
  auto [scaled, factor] = scale_to_integers(net);
  std::ostringstream out;
  out << "c fnrt flow network (capacities scaled by " << factor << ")\n";
  out << "c scale " << factor << "\n";
  out << "p min " << scaled.node_count() << " " << scaled.edges.size() << "\n";
  out << "n 1 " << scaled.demand().as_integer() << "\n";
  out << "n 2 -" << scaled.demand().as_integer() << "\n";
  for (const auto& e : scaled.edges)
    out << "a " << e.from + 1 << " " << e.to + 1 << " 0 " << e.capacity.as_integer() << " "
        << e.cost << "\n";
  return out.str();
}

}  // namespace fnrt
