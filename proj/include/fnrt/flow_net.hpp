#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fnrt/task_model.hpp"

namespace fnrt {

// Four-layer FNRT digraph: source -> job nodes -> window nodes -> sink.
// Dense node ids: 0 = source, 1 = sink, then one node per job row, then one
// per window. NodeId is the decoded view of a dense id.
struct NodeId {
  enum class Kind { source, sink, job, window };
  Kind kind = Kind::source;
  int index = 0;  // job: row into FlowNetwork::jobs; window: 1-based index k
};

struct FlowEdge {
  int from = 0;
  int to = 0;
  Rat capacity;
  int cost = 0;
};

// Job-node metadata; for AJA networks job_index is the current job of task_id.
struct FlowJob {
  int task_id = 0;
  int job_index = 0;
  Time arrival = 0;
  Time deadline = 0;
};

class FlowNetwork {
 public:
  static constexpr int kSource = 0;
  static constexpr int kSink = 1;

  std::vector<FlowEdge> edges;  // insertion order: source edges, job->window, window->sink
  std::vector<FlowJob> jobs;    // EDF order (deadline, task id) for AJA networks
  std::vector<Window> windows;  // capacity field = Cap(W_k)

  int node_count() const { return 2 + static_cast<int>(jobs.size() + windows.size()); }
  int job_node(int row) const { return 2 + row; }
  int window_node(int k) const { return 2 + static_cast<int>(jobs.size()) + (k - 1); }
  NodeId node(int id) const;

  // Total flow target: the sum of source-edge capacities (all remaining work).
  Rat demand() const;

  // Index into `edges` for (from, to); -1 when absent.
  int edge_between(int from, int to) const;
};

// Per-edge flows; `flow` runs parallel to FlowNetwork::edges.
struct FlowResult {
  std::vector<Rat> flow;
  Rat total;
};

// Uncosted FNRT for an AJA: source->job capacity c_i(t), job->window capacity
// l_k on every window inside [arrival, deadline], window->sink capacity
// capacities[k-1]. Jobs with no remaining work get no node.
FlowNetwork build_fnrt(const ActiveJobArea& aja, const std::vector<Rat>& capacities);

// Same topology, EDF costs: job->W_1 edges cost by EDF rank 1..N, job->W_k
// edges (k >= 2) cost N+k-1, source and sink edges cost 1. Earlier deadlines
// get steeper cost slopes and therefore higher (weak) priority.
FlowNetwork build_fnrt_edf(const ActiveJobArea& aja, const std::vector<Rat>& capacities);

// Offline feasibility oracle over [0, H]: every job instance gets a node,
// window->sink capacity is the raw M * l_k (no fluid reservation — all jobs
// are explicit). Throws when the network would exceed node_budget nodes.
FlowNetwork build_full_horizon(const TaskSet& ts, std::int64_t node_budget = 500000);

// Multiplies every capacity by the lcm of the capacity denominators so an
// integral solver applies; returns the factor for exact unscaling.
std::pair<FlowNetwork, std::int64_t> scale_to_integers(const FlowNetwork& net);

// Divides all flows by `factor` (exact).
FlowResult unscale(const FlowResult& result, std::int64_t factor);

// s_i between W_k and W_{k+1}: w(task, W_{k+1}) - w(task, W_k). Throws when
// either edge is missing. AJA networks only (task ids are unique there).
int cost_slope(const FlowNetwork& net, int task_id, int k);

// Per-task W_1 allocations from a solved flow; rows indexed by task_id - 1,
// tasks without a job node get 0.
std::vector<Rat> w1_allocations(const FlowNetwork& net, const FlowResult& result, int n_tasks);

// Full allocation matrix X_{i,k} (rows follow net.jobs, columns net.windows).
AllocMatrix x_flows(const FlowNetwork& net, const FlowResult& result);

// DIMACS min-cost-flow text dump (integral capacities via scale_to_integers;
// the factor is recorded in a comment) for cross-checking external solvers.
std::string to_dimacs(const FlowNetwork& net);

}  // namespace fnrt
