// End-to-end verification of the component's headline guarantees.  Each
// criterion is a pure function returning a JSON summary; every criterion is
// executed twice and must produce byte-identical canonical JSON both times.
// One PASS/FAIL line is printed per criterion; the process exits nonzero if
// any criterion fails.

#include "pffb/pffb.hpp"
#include "test_util.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace pffb;
using pffb_test::InstanceShape;
using pffb_test::Rng;
using pffb_test::random_instance;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void ensure(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure(what);
}

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

Instance staircase() {
  Instance inst;
  inst.stages = {{1, 1, Rational(1)}, {1, 2, Rational(3)}, {1, 3, Rational(5)}};
  inst.releases.assign(6, Rational(0));
  return inst;
}

std::string q(const QTime& value) { return to_display_string(value); }
std::string q(const Rational& value) { return to_display_string(value); }

// 1. On the two-stage worked example the offline optimum and the greedy
//    strategy both reach makespan 11, while the full-batch reference
//    schedule is feasible with makespan 12.
json criterion1() {
  const Instance inst = example1();
  const OracleResult oracle =
      optimal_permutation_schedule(inst, ObjectiveKind::Makespan);
  ensure(oracle.value == Rational(11), "oracle makespan is not 11");

  NeverWaitStrategy nw;
  const SimulationTrace trace = simulate(inst, nw);
  const QTime nw_cmax = evaluate_objective(trace.schedule, ObjectiveKind::Makespan);
  ensure(nw_cmax == QTime(11), "greedy makespan is not 11");

  Schedule reference;
  reference.instance = inst;
  reference.batches = {
      {0, 0, QTime(1), {0, 1, 2}}, {0, 0, QTime(4), {3, 4}},
      {1, 0, QTime(4), {0, 1}},    {1, 1, QTime(7), {2, 3}},
      {1, 0, QTime(8), {4}},
  };
  ensure(validate_schedule(reference).ok, "full-batch reference infeasible");
  ensure(evaluate_objective(reference, ObjectiveKind::Makespan) == QTime(12),
         "full-batch reference makespan is not 12");

  return json{{"oracle_cmax", q(oracle.value)},
              {"never_wait_cmax", q(nw_cmax)},
              {"full_batch_cmax", "12"}};
}

// 2. On the three-stage worked example the bound matrix reports 5 for the
//    final entry while every objective's optimum completes that job at 6.
json criterion2() {
  const Instance inst = example2();
  const BoundMatrix matrix = lower_bound_matrix(inst);
  ensure(matrix.at(2, 1) == Rational(5), "matrix entry is not 5");

  json optima;
  for (ObjectiveKind kind : all_objectives()) {
    const OracleResult result = optimal_permutation_schedule(inst, kind);
    const TimeTable table = time_table(result.schedule);
    ensure(table.completion[2][1] == QTime(6),
           std::string("optimal completion is not 6 for ") +
               objective_name(kind));
    optima[objective_name(kind)] = q(result.value);
  }
  return json{{"bound_entry", q(matrix.at(2, 1))}, {"optima", optima}};
}

// 3. The single-machine zero-release makespan bound: fixed instance values
//    plus a 1000-instance property run (never exceeds the matrix bound).
json criterion3() {
  const Instance fixed = staircase();
  const Rational sung = sung_bound(fixed);
  const Rational entry = lower_bound_matrix(fixed).at(2, 5);
  ensure(sung == Rational(16), "fixed-instance bound is not 16");
  ensure(entry == Rational(17), "fixed-instance matrix entry is not 17");

  Rng rng(0xACC3'0003ULL);
  InstanceShape shape;
  shape.max_stages = 4;
  shape.max_jobs = 12;
  shape.max_capacity = 4;
  shape.single_machine = true;
  shape.zero_releases = true;
  int violations = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const Instance inst = random_instance(rng, shape);
    const BoundMatrix matrix = lower_bound_matrix(inst);
    if (sung_bound(inst) >
        matrix.at(inst.stage_count() - 1, inst.job_count() - 1))
      ++violations;
  }
  ensure(violations == 0, "bound exceeded the matrix bound");
  return json{{"sung", q(sung)},
              {"matrix_entry", q(entry)},
              {"instances", 1000},
              {"violations", violations}};
}

// 4. The unit-slot relaxation reproduces the bound matrix entrywise on 1000
//    random instances.
json criterion4() {
  Rng rng(0xACC3'0004ULL);
  InstanceShape shape;
  shape.max_stages = 4;
  shape.max_jobs = 30;
  shape.max_machines = 3;
  shape.max_capacity = 4;
  int mismatches = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const Instance inst = random_instance(rng, shape);
    if (lower_bound_matrix(inst).entries != pff_correspondence(inst).entries)
      ++mismatches;
  }
  ensure(mismatches == 0, "relaxation disagreed with the matrix");
  return json{{"instances", 1000}, {"mismatches", mismatches}};
}

// 5. Greedy guarantee: per-stage completions stay within one prefix sum of
//    processing times above the bound matrix, and every objective ratio
//    against the oracle stays at or below 2.
json criterion5() {
  Rng rng(0xACC3'0005ULL);
  InstanceShape shape;
  shape.max_stages = 3;
  shape.max_jobs = 8;
  shape.max_machines = 2;
  shape.max_capacity = 3;
  QTime max_ratio(0);
  for (int iter = 0; iter < 500; ++iter) {
    const Instance inst = random_instance(rng, shape);
    NeverWaitStrategy nw;
    const SimulationTrace trace = simulate(inst, nw);
    const TimeTable table = time_table(trace.schedule);
    const BoundMatrix matrix = lower_bound_matrix(inst);

    Rational prefix(0);
    for (int i = 0; i < inst.stage_count(); ++i) {
      prefix += inst.stages[i].processing_time;
      for (int j = 0; j < inst.job_count(); ++j) {
        ensure(table.completion[i][j] <= QTime(matrix.at(i, j) + prefix),
               "per-stage completion exceeded bound plus prefix sum");
      }
    }
    for (ObjectiveKind kind : all_objectives()) {
      const QTime ratio =
          evaluate_objective(trace.schedule, kind) /
          QTime(optimal_permutation_schedule(inst, kind).value);
      ensure(ratio <= QTime(2), "objective ratio exceeded 2");
      if (max_ratio < ratio) max_ratio = ratio;
    }
  }
  return json{{"instances", 500},
              {"violations", 0},
              {"max_ratio", q(max_ratio)}};
}

// 6. Switching guarantee on two-stage instances: per-job completions within
//    the golden ratio of the bound matrix, and makespan/total-completion
//    ratios against the oracle at or below the golden ratio.
json criterion6() {
  Rng rng(0xACC3'0006ULL);
  InstanceShape shape;
  shape.max_stages = 2;
  shape.max_jobs = 7;
  shape.max_machines = 2;
  shape.max_capacity = 3;
  const QTime phi = QTime::golden_ratio();
  QTime max_ratio(0);
  int used = 0;
  while (used < 500) {
    Instance inst = random_instance(rng, shape);
    if (inst.stage_count() != 2) continue;
    ++used;
    TSwitchStrategy ts;
    const SimulationTrace trace = simulate(inst, ts);
    const TimeTable table = time_table(trace.schedule);
    const BoundMatrix matrix = lower_bound_matrix(inst);
    for (int j = 0; j < inst.job_count(); ++j) {
      ensure(table.completion[1][j] <= phi * QTime(matrix.at(1, j)),
             "per-job completion exceeded the golden guarantee");
    }
    for (ObjectiveKind kind :
         {ObjectiveKind::Makespan, ObjectiveKind::TotalCompletion}) {
      const QTime ratio =
          evaluate_objective(trace.schedule, kind) /
          QTime(optimal_permutation_schedule(inst, kind).value);
      ensure(ratio <= phi, "objective ratio exceeded the golden ratio");
      if (max_ratio < ratio) max_ratio = ratio;
    }
  }
  return json{{"instances", used},
              {"violations", 0},
              {"max_ratio", q(max_ratio)}};
}

// 7. Restricting the search to release order loses nothing: all-orders brute
//    force equals the release-order optimum on 50 small random instances.
json criterion7() {
  Rng rng(0xACC3'0007ULL);
  InstanceShape shape;
  shape.max_stages = 3;
  shape.max_jobs = 5;
  shape.max_machines = 2;
  shape.max_capacity = 3;
  int mismatches = 0;
  for (int iter = 0; iter < 50; ++iter) {
    const Instance inst = random_instance(rng, shape);
    for (ObjectiveKind kind : all_objectives()) {
      if (optimal_value_all_orders(inst, kind) !=
          optimal_permutation_schedule(inst, kind).value)
        ++mismatches;
    }
  }
  ensure(mismatches == 0, "an arbitrary order beat release order");
  return json{{"instances", 50}, {"mismatches", mismatches}};
}

// 8. Tightness family at alpha = 1/2: the greedy-vs-reference ratios take
//    their exact closed-form values.  For one machine the makespan ratio is
//    2 b1/(b1+1) = 7/4.  The total-flow ratio exceeds the asymptotic floor
//    2 - alpha = 3/2 (the exact finite-size values are 17/10 and 345/199).
json criterion8() {
  const Rational alpha = make_rational(1, 2);
  const std::map<int, std::map<std::string, Rational>> expected = {
      {1,
       {{"cmax", make_rational(7, 4)},
        {"sumc", make_rational(13, 8)},
        {"fmax", make_rational(13, 8)},
        {"sumf", make_rational(17, 10)}}},
      {2,
       {{"cmax", make_rational(29, 16)},
        {"sumc", make_rational(185, 112)},
        {"fmax", make_rational(27, 16)},
        {"sumf", make_rational(345, 199)}}},
  };
  const Rational flow_floor = Rational(2) - alpha;

  json out;
  for (const auto& [m1, ratios] : expected) {
    const WitnessFamily family = never_wait_tightness_instance(alpha, m1);
    ensure(validate_schedule(family.reference).ok, "reference infeasible");
    NeverWaitStrategy nw;
    const SimulationTrace trace = simulate(family.instance, nw);
    json row;
    for (ObjectiveKind kind : all_objectives()) {
      const QTime ratio = evaluate_objective(trace.schedule, kind) /
                          evaluate_objective(family.reference, kind);
      const Rational& want = ratios.at(objective_name(kind));
      ensure(ratio == QTime(want),
             std::string("ratio mismatch for ") + objective_name(kind) +
                 " with m1=" + std::to_string(m1));
      row[objective_name(kind)] = q(ratio);
    }
    ensure(QTime(ratios.at("sumf")) > QTime(flow_floor),
           "total-flow ratio not above its floor");
    out["m1=" + std::to_string(m1)] = std::move(row);
  }
  ensure(expected.at(1).at("cmax") ==
             make_rational(2 * 7, 7 + 1),  // 2 b1/(b1+1) with b1 = 7
         "closed form check failed");
  return out;
}

// 9. Full-batch degradation family: the strategy's makespan is
//    10a + 25a^2 against a reference of 25a - 2, a ratio above a.
json criterion9() {
  json rows = json::array();
  for (int alpha = 1; alpha <= 3; ++alpha) {
    const WitnessFamily family = full_batch_family(alpha);
    ensure(validate_schedule(family.reference).ok, "reference infeasible");
    FullBatchStrategy fb;
    const SimulationTrace trace = simulate(family.instance, fb);
    const QTime value =
        evaluate_objective(trace.schedule, ObjectiveKind::Makespan);
    const QTime reference =
        evaluate_objective(family.reference, ObjectiveKind::Makespan);
    ensure(value == QTime(10 * alpha + 25 * alpha * alpha),
           "strategy makespan off the closed form");
    ensure(reference == QTime(25 * alpha - 2),
           "reference makespan off the closed form");
    ensure(value / reference > QTime(alpha), "ratio not above alpha");
    rows.push_back(json{{"alpha", alpha},
                        {"full_batch", q(value)},
                        {"reference", q(reference)},
                        {"ratio", q(value / reference)}});
  }
  return json{{"rows", std::move(rows)}};
}

// 10. Reactive games against the greedy strategy: the realized ratios clear
//     the finite-size floors 2 - 2/b1 (total completion) and 2 - 3/b1
//     (total flow) and equal their derived closed forms exactly.
json criterion10() {
  const std::map<int, std::pair<Rational, Rational>> expected = {
      //            sum of completions          sum of flows
      {10, {make_rational(190, 101), make_rational(1891, 1001)}},
      {50, {make_rational(990, 501), make_rational(49451, 25001)}},
      {100, {make_rational(1990, 1001), make_rational(198901, 100001)}},
  };
  json out;
  for (const auto& [b1, ratios] : expected) {
    NeverWaitStrategy nw_c;
    auto source_c = adversary_sum_cj(b1);
    const SimulationTrace game_c = run_adversary_game(*source_c, nw_c);
    const QTime ratio_c =
        evaluate_objective(game_c.schedule, ObjectiveKind::TotalCompletion) /
        QTime(oracle_optimum(game_c.schedule.instance,
                             ObjectiveKind::TotalCompletion));
    ensure(ratio_c == QTime(ratios.first), "completion-game ratio mismatch");
    ensure(ratio_c > QTime(Rational(2) - make_rational(2, b1)),
           "completion-game ratio below its floor");

    NeverWaitStrategy nw_f;
    auto source_f = adversary_sum_fj(b1);
    const SimulationTrace game_f = run_adversary_game(*source_f, nw_f);
    const QTime ratio_f =
        evaluate_objective(game_f.schedule, ObjectiveKind::TotalFlow) /
        QTime(oracle_optimum(game_f.schedule.instance,
                             ObjectiveKind::TotalFlow));
    ensure(ratio_f == QTime(ratios.second), "flow-game ratio mismatch");
    ensure(ratio_f > QTime(Rational(2) - make_rational(3, b1)),
           "flow-game ratio below its floor");

    out["b1=" + std::to_string(b1)] =
        json{{"sumc", q(ratio_c)}, {"sumf", q(ratio_f)}};
  }
  return out;
}

struct Criterion {
  int id;
  std::string title;
  std::function<json()> run;
  double budget_seconds;  // 0 = unconstrained
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "worked-example reproduction", criterion1, 1.0},
      {2, "bound non-tightness on the three-stage example", criterion2, 0},
      {3, "single-machine makespan bound", criterion3, 10.0},
      {4, "unit-slot relaxation equals the bound matrix", criterion4, 0},
      {5, "greedy completion and ratio guarantees", criterion5, 60.0},
      {6, "switching-strategy golden-ratio guarantees", criterion6, 60.0},
      {7, "release order is optimal among all orders", criterion7, 0},
      {8, "tightness family exact ratios", criterion8, 0},
      {9, "full-batch degradation family", criterion9, 0},
      {10, "reactive-game ratio floors", criterion10, 10.0},
  };

  bool all_ok = true;
  bool deterministic = true;
  for (const Criterion& criterion : criteria) {
    std::string verdict;
    try {
      const auto started = std::chrono::steady_clock::now();
      const json first = criterion.run();
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        started)
              .count();
      if (criterion.budget_seconds > 0 && elapsed >= criterion.budget_seconds)
        throw CheckFailure("exceeded the time budget of " +
                           std::to_string(criterion.budget_seconds) + " s");
      const json second = criterion.run();
      if (dump_canonical(first) != dump_canonical(second)) {
        deterministic = false;
        throw CheckFailure("summary not byte-identical across runs");
      }
      char timing[32];
      std::snprintf(timing, sizeof timing, "%.2f s", elapsed);
      std::cout << "PASS " << criterion.id << ": " << criterion.title << " ("
                << timing << ") " << dump_canonical(first) << "\n";
    } catch (const std::exception& e) {
      all_ok = false;
      std::cout << "FAIL " << criterion.id << ": " << criterion.title << " ("
                << e.what() << ")\n";
    }
  }
  if (deterministic && all_ok) {
    std::cout << "PASS 11: byte-identical summaries across repeated runs\n";
  } else {
    std::cout << "FAIL 11: byte-identical summaries across repeated runs\n";
    all_ok = false;
  }
  return all_ok ? 0 : 1;
}
