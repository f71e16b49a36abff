#include "doctest.h"

#include "fnrt/mcmf.hpp"
#include "helpers.hpp"
#include "oracle_enum.hpp"

using namespace fnrt;
using testing::enumerate_flows;
using testing::fresh_jobs;
using testing::random_oracle_net;
using testing::two_proc_full;
using testing::two_proc_slack;

namespace {

FlowNetwork example_edf_net() {
  const TaskSet ts = two_proc_full();
  const auto aja = build_aja(ts, fresh_jobs(ts, 0), 0, TimeModel::continuous);
  return build_fnrt_edf(aja, {Rat(6), Rat(4), Rat(2)});
}

std::int64_t flow_cost(const FlowNetwork& net, const FlowResult& r) {
  Rat cost;
  for (std::size_t i = 0; i < net.edges.size(); ++i)
    cost = cost + r.flow[i] * Rat(net.edges[i].cost);
  return cost.as_integer();
}

}  // namespace

TEST_CASE("worked example: complete flow with the frozen W_1 split {2,2,2,0,0}") {
  const FlowNetwork net = example_edf_net();

  const FlowResult mf = max_flow(net);
  CHECK(mf.total == Rat(12));
  CHECK(is_complete(net, mf));
  CHECK(verify_flow(net, mf));

  const FlowResult mc = min_cost_max_flow(net);
  CHECK(mc.total == Rat(12));
  CHECK(is_complete(net, mc));
  CHECK(verify_flow(net, mc));

  const std::vector<Rat> x = w1_allocations(net, mc, 5);
  CHECK(x == std::vector<Rat>{Rat(2), Rat(2), Rat(2), Rat(0), Rat(0)});

  SUBCASE("spill allocation is exact: W_2 takes 4 units, W_3 takes 2") {
    const AllocMatrix full = x_flows(net, mc);
    Rat w2, w3;
    for (std::size_t r = 0; r < net.jobs.size(); ++r) {
      w2 = w2 + full[r][1];
      w3 = w3 + full[r][2];
    }
    CHECK(w2 == Rat(4));
    CHECK(w3 == Rat(2));
  }

  SUBCASE("solver is deterministic") {
    const FlowResult again = min_cost_max_flow(net);
    CHECK(again.flow == mc.flow);
  }
}

TEST_CASE("slack set saturates the source but not the sink") {
  const TaskSet ts = two_proc_slack();
  const auto aja = build_aja(ts, fresh_jobs(ts, 0), 0, TimeModel::continuous);
  const auto caps = window_capacities_continuous(aja, ts);
  const FlowNetwork net = build_fnrt_edf(aja, caps);

  const FlowResult mc = min_cost_max_flow(net);
  CHECK(mc.total == Rat(7));  // all remaining work placed
  CHECK(is_complete(net, mc));
  Rat sink_caps;
  for (const auto& w : net.windows) sink_caps = sink_caps + w.capacity;
  CHECK(mc.total < sink_caps);
}

TEST_CASE("incomplete when a deadline wall cuts the demand") {
  // one job with 5 units of work but only a 3-long window before its deadline
  FlowNetwork net;
  net.windows.push_back({1, 0, 3, Rat(6)});
  net.jobs.push_back({1, 0, 0, 3});
  net.edges.push_back({FlowNetwork::kSource, net.job_node(0), Rat(5), 1});
  net.edges.push_back({net.job_node(0), net.window_node(1), Rat(3), 1});
  net.edges.push_back({net.window_node(1), FlowNetwork::kSink, Rat(6), 1});

  const FlowResult mf = max_flow(net);
  CHECK(mf.total == Rat(3));
  CHECK_FALSE(is_complete(net, mf));
  const FlowResult mc = min_cost_max_flow(net);
  CHECK(mc.total == Rat(3));  // min-cost still maximizes flow first
}

TEST_CASE("fractional capacities are rejected until scaled") {
  FlowNetwork net;
  net.windows.push_back({1, 0, 1, Rat(1, 2)});
  net.jobs.push_back({1, 0, 0, 1});
  net.edges.push_back({FlowNetwork::kSource, net.job_node(0), Rat(1, 2), 0});
  net.edges.push_back({net.job_node(0), net.window_node(1), Rat(1), 0});
  net.edges.push_back({net.window_node(1), FlowNetwork::kSink, Rat(1, 2), 0});
  CHECK_THROWS_AS(max_flow(net), std::invalid_argument);
  CHECK_THROWS_AS(min_cost_max_flow(net), std::invalid_argument);

  const auto [scaled, factor] = scale_to_integers(net);
  CHECK(factor == 2);
  const FlowResult r = min_cost_max_flow(scaled);
  CHECK(unscale(r, factor).total == Rat(1, 2));
}

TEST_CASE("solver matches the exhaustive oracle on random four-layer nets") {
  std::mt19937_64 rng(20260817);
  for (int trial = 0; trial < 80; ++trial) {
    const FlowNetwork net = random_oracle_net(rng);
    const auto expect = enumerate_flows(net);

    SolverStats stats;
    const FlowResult mf = max_flow(net, &stats);
    REQUIRE_MESSAGE(mf.total == Rat(expect.max_total), "trial ", trial);
    CHECK(verify_flow(net, mf));
    if (expect.max_total > 0) CHECK(stats.iterations > 0);

    const FlowResult mc = min_cost_max_flow(net);
    REQUIRE_MESSAGE(mc.total == Rat(expect.max_total), "trial ", trial);
    REQUIRE_MESSAGE(flow_cost(net, mc) == expect.min_cost, "trial ", trial);
    CHECK(verify_flow(net, mc));
  }
}

TEST_CASE("stats are populated") {
  SolverStats stats;
  min_cost_max_flow(example_edf_net(), &stats);
  CHECK(stats.iterations > 0);
  CHECK(stats.augmentations > 0);
  CHECK(stats.wall_ms >= 0.0);
}
