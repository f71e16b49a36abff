#include "fnrt/mcmf.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace fnrt {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Residual graph over int64 capacities. Arc 2i is the forward image of
// net.edges[i], arc 2i+1 its residual twin, so flows map back by index.
struct Residual {
  struct Arc {
    int to;
    std::int64_t cap;
    std::int64_t cost;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj;  // node -> arc indices, insertion order

  explicit Residual(const FlowNetwork& net) : adj(net.node_count()) {
    arcs.reserve(net.edges.size() * 2);
    for (const auto& e : net.edges) {
      if (!e.capacity.is_integer())
        throw std::invalid_argument("flow solver: non-integral capacity " + e.capacity.str() +
                                    "; scale_to_integers first");
      if (e.cost < 0)
        throw std::invalid_argument("flow solver: negative edge cost");
      adj[e.from].push_back(static_cast<int>(arcs.size()));
      arcs.push_back({e.to, e.capacity.as_integer(), e.cost});
      adj[e.to].push_back(static_cast<int>(arcs.size()));
      arcs.push_back({e.from, 0, -static_cast<std::int64_t>(e.cost)});
    }
  }

  FlowResult harvest(const FlowNetwork& net) const {
    FlowResult result;
    result.flow.reserve(net.edges.size());
    Rat total;
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
      const std::int64_t pushed = arcs[2 * i + 1].cap;  // residual twin holds the flow
      result.flow.push_back(Rat(pushed));
      if (net.edges[i].from == FlowNetwork::kSource) total = total + Rat(pushed);
    }
    result.total = total;
    return result;
  }
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net, SolverStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  Residual g(net);
  const int n = net.node_count();
  const int s = FlowNetwork::kSource;
  const int t = FlowNetwork::kSink;

  std::vector<int> level(n), it(n);
  std::int64_t phases = 0, augmentations = 0;

  auto bfs = [&]() {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int a : g.adj[u]) {
        const auto& arc = g.arcs[a];
        if (arc.cap > 0 && level[arc.to] < 0) {
          level[arc.to] = level[u] + 1;
          q.push(arc.to);
        }
      }
    }
    return level[t] >= 0;
  };

  // Blocking-flow DFS; recursion depth is bounded by the level count, which
  // the four-layer shape keeps small.
  auto dfs = [&](auto&& self, int u, std::int64_t pushed) -> std::int64_t {
    if (u == t) return pushed;
    for (int& i = it[u]; i < static_cast<int>(g.adj[u].size()); ++i) {
      const int a = g.adj[u][i];
      auto& arc = g.arcs[a];
      if (arc.cap <= 0 || level[arc.to] != level[u] + 1) continue;
      const std::int64_t got = self(self, arc.to, std::min(pushed, arc.cap));
      if (got > 0) {
        arc.cap -= got;
        g.arcs[a ^ 1].cap += got;
        return got;
      }
    }
    return std::int64_t{0};
  };

  while (bfs()) {
    ++phases;
    std::fill(it.begin(), it.end(), 0);
    while (dfs(dfs, s, kInf) > 0) ++augmentations;
  }

  if (stats) {
    stats->iterations = phases;
    stats->augmentations = augmentations;
    stats->wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return g.harvest(net);
}

FlowResult min_cost_max_flow(const FlowNetwork& net, SolverStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  Residual g(net);
  const int n = net.node_count();
  const int s = FlowNetwork::kSource;
  const int t = FlowNetwork::kSink;

  std::vector<std::int64_t> pot(n, 0), dist(n);
  std::vector<int> parent_arc(n);
  std::int64_t rounds = 0, augmentations = 0;

  for (;;) {
    // Dijkstra on reduced costs; (dist, node) keys keep the scan order — and
    // with it the chosen augmenting path — independent of heap internals.
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    dist[s] = 0;
    using Key = std::pair<std::int64_t, int>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
    heap.push({0, s});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (int a : g.adj[u]) {
        const auto& arc = g.arcs[a];
        if (arc.cap <= 0) continue;
        const std::int64_t nd = d + arc.cost + pot[u] - pot[arc.to];
        if (nd < dist[arc.to]) {
          dist[arc.to] = nd;
          parent_arc[arc.to] = a;
          heap.push({nd, arc.to});
        }
      }
    }
    ++rounds;
    if (dist[t] >= kInf) break;

    // Capping the potential update at dist[t] keeps reduced costs
    // non-negative even for nodes this round never reached.
    for (int u = 0; u < n; ++u) pot[u] += std::min(dist[u], dist[t]);

    std::int64_t bottleneck = kInf;
    for (int u = t; u != s;) {
      const auto& arc = g.arcs[parent_arc[u]];
      bottleneck = std::min(bottleneck, arc.cap);
      u = g.arcs[parent_arc[u] ^ 1].to;
    }
    for (int u = t; u != s;) {
      const int a = parent_arc[u];
      g.arcs[a].cap -= bottleneck;
      g.arcs[a ^ 1].cap += bottleneck;
      u = g.arcs[a ^ 1].to;
    }
    ++augmentations;
  }

  if (stats) {
    stats->iterations = rounds;
    stats->augmentations = augmentations;
    stats->wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return g.harvest(net);
}

bool is_complete(const FlowNetwork& net, const FlowResult& result) {
  return result.total == net.demand();
}

bool verify_flow(const FlowNetwork& net, const FlowResult& result) {
  if (result.flow.size() != net.edges.size()) return false;
  std::vector<Rat> balance(static_cast<std::size_t>(net.node_count()));
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const Rat f = result.flow[i];
    if (f < Rat(0) || f > net.edges[i].capacity) return false;
    balance[static_cast<std::size_t>(net.edges[i].from)] =
        balance[static_cast<std::size_t>(net.edges[i].from)] - f;
    balance[static_cast<std::size_t>(net.edges[i].to)] =
        balance[static_cast<std::size_t>(net.edges[i].to)] + f;
  }
  for (int u = 0; u < net.node_count(); ++u) {
    if (u == FlowNetwork::kSource || u == FlowNetwork::kSink) continue;
    if (!balance[static_cast<std::size_t>(u)].is_zero()) return false;
  }
  return balance[FlowNetwork::kSource] == Rat(0) - result.total &&
         balance[FlowNetwork::kSink] == result.total;
}

}  // namespace fnrt
