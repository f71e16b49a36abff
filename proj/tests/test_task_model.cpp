#include "doctest.h"

#include <sstream>

#include "fnrt/task_model.hpp"
#include "helpers.hpp"

using namespace fnrt;
using testing::fresh_jobs;
using testing::two_proc_full;
using testing::two_proc_slack;

TEST_CASE("task set validation") {
  CHECK_THROWS_AS(TaskSet({}, 2), std::invalid_argument);
  CHECK_THROWS_AS(TaskSet({{1, 1, 2}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(TaskSet({{1, 0, 2}}, 1), std::invalid_argument);   // wcet < 1
  CHECK_THROWS_AS(TaskSet({{1, 3, 2}}, 1), std::invalid_argument);   // period < wcet
  CHECK_THROWS_AS(TaskSet({{1, 1, 2}, {3, 1, 2}}, 1), std::invalid_argument);  // id gap

  SUBCASE("ids auto-assigned when zero") {
    const TaskSet ts({{0, 1, 2}, {0, 1, 4}}, 1);
    CHECK(ts.task(1).period == 2);
    CHECK(ts.task(2).period == 4);
  }
}

TEST_CASE("aggregate properties of the worked example") {
  const TaskSet ts = two_proc_full();
  CHECK(ts.size() == 5);
  CHECK(ts.processors() == 2);
  CHECK(ts.total_utilization() == Rat(2));
  CHECK(ts.hyperperiod() == 18);
  CHECK(ts.max_period() == 9);
  CHECK(two_proc_slack().total_utilization() == Rat(11, 9));
}

TEST_CASE("boundary grids") {
  const TaskSet ts = two_proc_full();

  SUBCASE("at t = 0 both models give the deadline fan {0,3,6,9}") {
    const auto jobs = fresh_jobs(ts, 0);
    const std::vector<Time> want{0, 3, 6, 9};
    CHECK(boundaries(ts, jobs, 0, TimeModel::continuous) == want);
    CHECK(boundaries(ts, jobs, 0, TimeModel::discrete) == want);
  }

  SUBCASE("mid-run the discrete grid adds future-job deadlines") {
    // two tasks, periods 4 and 6, at t = 4: current deadlines are 8 and 6
    const TaskSet pair({{1, 1, 4}, {2, 1, 6}}, 1);
    std::vector<JobState> jobs{{1, 1, 4, 8, Rat(1)}, {2, 0, 0, 6, Rat(1)}};
    CHECK(boundaries(pair, jobs, 4, TimeModel::continuous) == std::vector<Time>{4, 6, 8});
    CHECK(boundaries(pair, jobs, 4, TimeModel::discrete) == std::vector<Time>{4, 6, 8});

    // at t = 6 the d_max stretches to 12, so the discrete grid picks up the
    // period-4 deadline at 8 even though no current job ends there
    std::vector<JobState> later{{1, 1, 4, 8, Rat(1)}, {2, 1, 6, 12, Rat(1)}};
    CHECK(boundaries(pair, later, 6, TimeModel::continuous) == std::vector<Time>{6, 8, 12});
    CHECK(boundaries(pair, later, 6, TimeModel::discrete) == std::vector<Time>{6, 8, 12});
  }
}

TEST_CASE("build_aja tiles [t, d_max] with half-open windows") {
  const TaskSet ts = two_proc_full();
  const auto aja = build_aja(ts, fresh_jobs(ts, 0), 0, TimeModel::discrete);
  CHECK(aja.now == 0);
  CHECK(aja.d_max == 9);
  REQUIRE(aja.windows.size() == 3);
  CHECK(aja.windows[0].index == 1);
  CHECK(aja.windows[0].start == 0);
  CHECK(aja.windows[0].end == 3);
  CHECK(aja.windows[2].start == 6);
  CHECK(aja.windows[2].end == 9);
  CHECK(aja.jobs.size() == 5);

  SUBCASE("job liveness is full containment") {
    const JobState& early = aja.jobs[0];  // deadline 3
    CHECK(job_alive_in(early, aja.windows[0]));
    CHECK_FALSE(job_alive_in(early, aja.windows[1]));
    const JobState& late = aja.jobs[4];  // deadline 9
    CHECK(job_alive_in(late, aja.windows[2]));
  }
}

TEST_CASE("continuous capacities reserve the inactive utilization") {
  SUBCASE("fully utilized: (6, 4, 2)") {
    const TaskSet ts = two_proc_full();
    const auto aja = build_aja(ts, fresh_jobs(ts, 0), 0, TimeModel::continuous);
    const auto caps = window_capacities_continuous(aja, ts);
    REQUIRE(caps.size() == 3);
    CHECK(caps[0] == Rat(6));
    CHECK(caps[1] == Rat(4));
    CHECK(caps[2] == Rat(2));
  }

  SUBCASE("with slack: (6, 5, 3)") {
    const TaskSet ts = two_proc_slack();
    const auto aja = build_aja(ts, fresh_jobs(ts, 0), 0, TimeModel::continuous);
    const auto caps = window_capacities_continuous(aja, ts);
    CHECK(caps == std::vector<Rat>{Rat(6), Rat(5), Rat(3)});
  }

  SUBCASE("over-utilization throws unless clamped") {
    // three 0.9-tasks retire at 10, leaving a long tail window with negative
    // fluid capacity
    const TaskSet over({{1, 9, 10}, {2, 9, 10}, {3, 9, 10}, {4, 1, 40}}, 2);
    const auto aja = build_aja(over, fresh_jobs(over, 0), 0, TimeModel::continuous);
    CHECK_THROWS_AS(window_capacities_continuous(aja, over), std::logic_error);
    const auto caps = window_capacities_continuous(aja, over, true);
    CHECK(caps[1] == Rat(0));
  }
}

TEST_CASE("fluid allocation satisfies every constraint family") {
  const TaskSet ts = two_proc_full();
  const auto aja = [&] {
    auto a = build_aja(ts, fresh_jobs(ts, 0), 0, TimeModel::continuous);
    const auto caps = window_capacities_continuous(a, ts);
    for (std::size_t k = 0; k < caps.size(); ++k) a.windows[k].capacity = caps[k];
    return a;
  }();
  const AllocMatrix fluid = fluid_allocation(aja, ts);
  CHECK(check_constraints(aja, fluid).ok());

  SUBCASE("each violation kind is detected") {
    AllocMatrix x = fluid;
    x[0][0] = x[0][0] - Rat(1);  // under-serves job 1: JCC
    auto report = check_constraints(aja, x);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].kind == Violation::Kind::jcc);

    x = fluid;
    x[0][1] = Rat(1);  // job 1 is dead in W_2: NIP (limit 0 there)
    x[0][0] = x[0][0] - Rat(1);
    report = check_constraints(aja, x);
    bool nip = false;
    for (const auto& v : report.violations) nip = nip || v.kind == Violation::Kind::nip;
    CHECK(nip);

    x = fluid;
    x[3][2] = x[3][2] + Rat(3);  // swamp W_3 beyond Cap = 2: PCC (and JCC)
    report = check_constraints(aja, x);
    bool pcc = false;
    for (const auto& v : report.violations) pcc = pcc || v.kind == Violation::Kind::pcc;
    CHECK(pcc);
  }
}

TEST_CASE("task set file round trip") {
  const TaskSet ts = two_proc_full();
  std::ostringstream out;
  save_taskset(ts, out);
  std::istringstream in(out.str());
  const TaskSet back = load_taskset(in);
  REQUIRE(back.size() == ts.size());
  CHECK(back.processors() == 2);
  for (int id = 1; id <= ts.size(); ++id) {
    CHECK(back.task(id).wcet == ts.task(id).wcet);
    CHECK(back.task(id).period == ts.task(id).period);
  }

  SUBCASE("comments and blank lines are fine") {
    std::istringstream text("# demo\nM 2\n\nC 2 P 3  # inline note\nC 2 P 6\n");
    const TaskSet small = load_taskset(text);
    CHECK(small.size() == 2);
    CHECK(small.task(1).period == 3);
  }

  SUBCASE("malformed input fails with a line number") {
    std::istringstream missing_m("C 2 P 3\n");
    CHECK_THROWS_AS(load_taskset(missing_m), std::runtime_error);
    std::istringstream junk("M 2\nC 2 Q 3\n");
    CHECK_THROWS_AS(load_taskset(junk), std::runtime_error);
    std::istringstream trailing("M 2\nC 2 P 3 7\n");
    CHECK_THROWS_AS(load_taskset(trailing), std::runtime_error);
    std::istringstream badwcet("M 2\nC 4 P 3\n");
    CHECK_THROWS_AS(load_taskset(badwcet), std::invalid_argument);  // TaskSet ctor check
  }
}
