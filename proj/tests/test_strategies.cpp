#include "pffb/strategies.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "pffb/bounds.hpp"
#include "test_util.hpp"

#include <map>
#include <vector>

using namespace pffb;
using pffb_test::InstanceShape;
using pffb_test::Rng;
using pffb_test::random_instance;
using pffb_test::replay_trace;

namespace {

Instance example1() {
  Instance inst;
  inst.stages = {{1, 3, Rational(3)}, {2, 2, Rational(4)}};
  inst.releases = {Rational(0), Rational(0), Rational(1), Rational(3),
                   Rational(3)};
  return inst;
}

Instance example2() {
  Instance inst;
  inst.stages = {{1, 1, Rational(1)}, {1, 2, Rational(2)}, {1, 1, Rational(1)}};
  inst.releases = {Rational(0), Rational(0)};
  return inst;
}

std::vector<BatchAssignment> canonical_batches(const Schedule& sched) {
  std::vector<BatchAssignment> batches = sched.batches;
  sort_batches_canonically(batches);
  return batches;
}

}  // namespace

TEST_CASE("greedy strategy reproduces the worked example batch for batch") {
  NeverWaitStrategy nw;
  const SimulationTrace trace = simulate(example1(), nw);
  const std::vector<BatchAssignment> expected = {
      {0, 0, QTime(0), {0, 1}},  {0, 0, QTime(3), {2, 3, 4}},
      {1, 0, QTime(3), {0, 1}},  {1, 1, QTime(6), {2, 3}},
      {1, 0, QTime(7), {4}},
  };
  CHECK(canonical_batches(trace.schedule) == expected);
  CHECK(evaluate_objective(trace.schedule, ObjectiveKind::Makespan) == QTime(11));
  CHECK(evaluate_objective(trace.schedule, ObjectiveKind::TotalCompletion) ==
        QTime(45));
}

TEST_CASE("greedy strategy on the three-stage example") {
  NeverWaitStrategy nw;
  const SimulationTrace trace = simulate(example2(), nw);
  const TimeTable table = time_table(trace.schedule);
  CHECK(table.completion[2][0] == QTime(4));
  CHECK(table.completion[2][1] == QTime(6));
  CHECK(evaluate_objective(trace.schedule, ObjectiveKind::TotalCompletion) ==
        QTime(10));
}

TEST_CASE("greedy strategy never leaves an idle machine with available jobs") {
  Rng rng(0x57A7'0001ULL);
  InstanceShape shape;
  shape.max_stages = 3;
  shape.max_jobs = 10;
  shape.max_machines = 3;
  shape.max_capacity = 3;
  for (int iter = 0; iter < 150; ++iter) {
    const Instance inst = random_instance(rng, shape);
    NeverWaitStrategy nw;
    const SimulationTrace trace = simulate(inst, nw);
    REQUIRE(validate_schedule(trace.schedule).ok);
    replay_trace(
        trace.schedule.instance, trace,
        [&](const pffb_test::ReplayState& state, const TraceStep&,
            const std::vector<std::vector<QTime>>& ready_at) {
          for (int i = 0; i < static_cast<int>(state.stages.size()); ++i) {
            if (state.available(i, ready_at) == 0) continue;
            for (const QTime& free_at : state.stages[i].machine_free) {
              REQUIRE(state.now < free_at);  // jobs left over => machine busy
            }
          }
        });
  }
}

TEST_CASE("full-batch strategy reproduces the worked example batch for batch") {
  FullBatchStrategy fb;
  const SimulationTrace trace = simulate(example1(), fb);
  const std::vector<BatchAssignment> expected = {
      {0, 0, QTime(1), {0, 1, 2}}, {0, 0, QTime(4), {3, 4}},
      {1, 0, QTime(4), {0, 1}},    {1, 1, QTime(7), {2, 3}},
      {1, 0, QTime(8), {4}},
  };
  CHECK(canonical_batches(trace.schedule) == expected);
  CHECK(evaluate_objective(trace.schedule, ObjectiveKind::Makespan) == QTime(12));
}

TEST_CASE("full-batch strategy starts at most one short batch per stage") {
  Rng rng(0x57A7'0002ULL);
  InstanceShape shape;
  shape.max_stages = 3;
  shape.max_jobs = 11;
  shape.max_machines = 2;
  shape.max_capacity = 4;
  for (int iter = 0; iter < 150; ++iter) {
    const Instance inst = random_instance(rng, shape);
    FullBatchStrategy fb;
    const SimulationTrace trace = simulate(inst, fb);
    REQUIRE(validate_schedule(trace.schedule).ok);
    std::map<int, std::vector<const BatchAssignment*>> by_stage;
    for (const BatchAssignment& batch : trace.schedule.batches)
      by_stage[batch.stage].push_back(&batch);
    for (const auto& [stage, batches] : by_stage) {
      const int cap = inst.stages[stage].batch_capacity;
      int undersized = 0;
      const BatchAssignment* last_short = nullptr;
      for (const BatchAssignment* batch : batches) {
        if (static_cast<int>(batch->jobs.size()) < cap) {
          ++undersized;
          last_short = batch;
        }
      }
      REQUIRE(undersized <= 1);
      if (last_short != nullptr) {
        for (const BatchAssignment* batch : batches) {
          REQUIRE(!(last_short->start < batch->start));  // short one is last
        }
      }
    }
  }
}

TEST_CASE("switching strategy is defined only for two stages") {
  TSwitchStrategy ts;
  CHECK_THROWS_AS(simulate(example2(), ts), UnsupportedInstanceError);
  Instance one_stage;
  one_stage.stages = {{1, 1, Rational(1)}};
  one_stage.releases = {Rational(0)};
  TSwitchStrategy ts2;
  CHECK_THROWS_AS(simulate(one_stage, ts2), UnsupportedInstanceError);
}

TEST_CASE("switch time and starting grid for processing times 3 and 4") {
  TSwitchStrategy ts;
  ts.prepare({{1, 3, Rational(3)}, {2, 2, Rational(4)}});
  const QTime phi = QTime::golden_ratio();
  // phi*3 + (phi-1)*4 = 7*phi - 4 = -1/2 + (7/2)*sqrt5
  CHECK(ts.switch_time() ==
        QTime(make_rational(-1, 2), make_rational(7, 2)));
  CHECK(ts.switch_time() == phi * QTime(3) + (phi - QTime(1)) * QTime(4));

  const StartingInstantGrid& grid = ts.grid();
  CHECK(grid.period == QTime(3));
  CHECK(grid.offset == ts.switch_time() - QTime(6));  // floor(t/3) = 2
  CHECK(grid.contains(grid.offset));
  CHECK(grid.contains(grid.offset + QTime(3)));
  CHECK(grid.contains(ts.switch_time()));
  CHECK_FALSE(grid.contains(grid.offset + QTime(1)));
  CHECK_FALSE(grid.contains(QTime(0)));
  CHECK(grid.next_at_or_after(QTime(0)) == grid.offset);
  CHECK(grid.next_at_or_after(grid.offset) == grid.offset);
  CHECK(grid.next_after(grid.offset) == grid.offset + QTime(3));
  CHECK(grid.next_after(QTime(0)) == grid.offset);
  CHECK(grid.next_at_or_after(grid.offset + QTime(make_rational(1, 10))) ==
        grid.offset + QTime(3));
}

TEST_CASE("switching strategy meets the golden guarantee exactly on one job") {
  Instance inst;
  inst.stages = {{1, 1, Rational(1)}, {1, 1, Rational(1)}};
  inst.releases = {Rational(0)};
  TSwitchStrategy ts;
  const SimulationTrace trace = simulate(inst, ts);
  const QTime completion =
      evaluate_objective(trace.schedule, ObjectiveKind::Makespan);
  CHECK(completion == QTime(1) + QTime::sqrt5());       // 2*phi
  CHECK(completion == QTime::golden_ratio() * QTime(2));  // phi times the bound
}

TEST_CASE("switching strategy on two unit jobs with unit capacities") {
  Instance inst;
  inst.stages = {{1, 1, Rational(1)}, {1, 1, Rational(1)}};
  inst.releases = {Rational(0), Rational(0)};
  TSwitchStrategy ts;
  const SimulationTrace trace = simulate(inst, ts);
  // Stage-1 starts at sqrt5-2 and sqrt5-1; stage 2 runs [sqrt5, sqrt5+2).
  CHECK(evaluate_objective(trace.schedule, ObjectiveKind::Makespan) ==
        QTime(Rational(2), Rational(1)));
  const TimeTable table = time_table(trace.schedule);
  CHECK(table.start[0][0] == QTime(Rational(-2), Rational(1)));
  CHECK(table.start[1][0] == QTime::sqrt5());
}

TEST_CASE("switching strategy honors its grid and switch time on random input") {
  Rng rng(0x57A7'0003ULL);
  InstanceShape shape;
  shape.max_stages = 2;
  shape.max_jobs = 6;
  shape.max_machines = 2;
  shape.max_capacity = 3;
  for (int iter = 0; iter < 100; ++iter) {
    Instance inst = random_instance(rng, shape);
    while (inst.stage_count() != 2) inst = random_instance(rng, shape);

    TSwitchStrategy ts;
    const SimulationTrace trace = simulate(inst, ts);
    REQUIRE(validate_schedule(trace.schedule).ok);

    for (const BatchAssignment& batch : trace.schedule.batches) {
      if (batch.stage == 0) {
        REQUIRE(ts.grid().contains(batch.start));
      } else {
        REQUIRE(!(batch.start < ts.switch_time()));
      }
    }

    // Per-job guarantee: each last-stage completion is within the golden
    // ratio of its completion-time bound.
    const BoundMatrix bounds = lower_bound_matrix(inst);
    const TimeTable table = time_table(trace.schedule);
    const QTime phi = QTime::golden_ratio();
    for (int j = 0; j < inst.job_count(); ++j) {
      REQUIRE(table.completion[1][j] <= phi * QTime(bounds.at(1, j)));
    }
  }
}

TEST_CASE("strategies are constructible by name") {
  CHECK(make_strategy("never-wait")->name() == "never-wait");
  CHECK(make_strategy("full-batch")->name() == "full-batch");
  CHECK(make_strategy("t-switch")->name() == "t-switch");
  CHECK_THROWS_AS(make_strategy("eager"), Error);
}
