#pragma once

#include <cstdint>

#include "fnrt/flow_net.hpp"

namespace fnrt {

struct SolverStats {
  std::int64_t iterations = 0;     // BFS phases (max flow) or Dijkstra rounds (min cost)
  std::int64_t augmentations = 0;  // augmenting paths pushed
  double wall_ms = 0.0;
};

// Dinic max flow. Capacities must be integral (scale_to_integers first);
// flows come back integral by the integrality of the residual network.
FlowResult max_flow(const FlowNetwork& net, SolverStats* stats = nullptr);

// Successive shortest paths with Johnson potentials: a maximum flow of
// minimum total cost. Requires integral capacities and non-negative costs.
// Deterministic: fixed edge order, lowest-node tie-break in the heap.
FlowResult min_cost_max_flow(const FlowNetwork& net, SolverStats* stats = nullptr);

// True when the flow saturates every source edge (total == demand), i.e. all
// remaining work fits before its deadlines.
bool is_complete(const FlowNetwork& net, const FlowResult& result);

// Capacity and conservation audit for a result; used by tests.
bool verify_flow(const FlowNetwork& net, const FlowResult& result);

}  // namespace fnrt
