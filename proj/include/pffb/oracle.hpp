#pragma once

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pffb/bounds.hpp"
#include "pffb/core.hpp"

namespace pffb {

// blocks[i] lists the batch sizes of stage i in job order: the first
// blocks[i][0] jobs form the first batch, and so on.  Together with the
// earliest-start realization below, a composition tuple fully determines a
// release-order permutation schedule.
struct BatchComposition {
  std::vector<std::vector<int>> blocks;
};

struct OracleLimits {
  // Brute force enumerates only instances with at most this many jobs.
  int max_jobs = 9;
  // The all-orders variant additionally permutes the job order.
  int max_jobs_all_orders = 6;
  // Upper bound on the product of per-stage composition counts.
  unsigned long long max_leaves = 2'000'000;

  static OracleLimits from_env() {
    OracleLimits limits;
    if (const char* cap = std::getenv("PFFB_ORACLE_CAP")) {
      try {
        limits.max_jobs = std::stoi(cap);
      } catch (...) {
        throw Error("oracle: PFFB_ORACLE_CAP must be an integer");
      }
      if (limits.max_jobs < 1)
        throw Error("oracle: PFFB_ORACLE_CAP must be >= 1");
    }
    return limits;
  }
};

namespace oracle_detail {

constexpr unsigned long long kCountCap =
    std::numeric_limits<unsigned long long>::max() / 4;

// Number of compositions of n into parts of size 1..cap, saturating.
inline unsigned long long count_compositions(int n, int cap) {
  std::vector<unsigned long long> a(n + 1, 0);
  a[0] = 1;
  for (int k = 1; k <= n; ++k) {
    unsigned long long total = 0;
    for (int i = 1; i <= cap && i <= k; ++i) {
      total += a[k - i];
      if (total >= kCountCap) return kCountCap;
    }
    a[k] = total;
  }
  return a[n];
}

// All compositions of n into parts 1..cap in lexicographic order
// ([1,1,1] < [1,2] < [2,1] < [3]).  Cached; callers must not mutate.
inline const std::vector<std::vector<int>>& compositions(int n, int cap) {
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  auto [it, fresh] = cache.try_emplace({n, cap});
  if (!fresh) return it->second;
  std::vector<std::vector<int>>& out = it->second;
  std::vector<int> cur;
  const auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = 1; part <= cap && part <= rest; ++part) {
      cur.push_back(part);
      self(self, rest - part);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

struct RealizedStage {
  std::vector<Rational> completions;       // per job
  std::vector<Rational> block_starts;      // per block
  std::vector<int> block_machines;         // per block
};

// Start each block as early as its jobs' arrivals and the earliest-free
// machine allow, in block order, on the machine that frees first (lowest
// index on ties).  Block starts are additionally kept nondecreasing so the
// same realization is meaningful when arrivals are not sorted (the
// all-orders search); with sorted arrivals that clamp never binds.
inline RealizedStage realize_stage(const std::vector<Rational>& arrivals,
                                   const std::vector<int>& blocks,
                                   const StageConfig& cfg) {
  RealizedStage out;
  out.completions.resize(arrivals.size());
  std::vector<Rational> free_at(cfg.machines, Rational(0));
  Rational prev_start(0);
  int offset = 0;
  for (const int size : blocks) {
    int pick = 0;
    for (int k = 1; k < cfg.machines; ++k)
      if (free_at[k] < free_at[pick]) pick = k;
    Rational start = free_at[pick];
    for (int j = offset; j < offset + size; ++j)
      if (arrivals[j] > start) start = arrivals[j];
    if (prev_start > start) start = prev_start;
    const Rational done = start + cfg.processing_time;
    free_at[pick] = done;
    for (int j = offset; j < offset + size; ++j) out.completions[j] = done;
    out.block_starts.push_back(start);
    out.block_machines.push_back(pick);
    prev_start = start;
    offset += size;
  }
  return out;
}

inline Rational objective_of(const std::vector<Rational>& completions,
                             const std::vector<Rational>& releases,
                             ObjectiveKind kind) {
  Rational acc;
  const int n = static_cast<int>(completions.size());
  switch (kind) {
    case ObjectiveKind::Makespan:
      acc = completions[0];
      for (int j = 1; j < n; ++j)
        if (completions[j] > acc) acc = completions[j];
      return acc;
    case ObjectiveKind::TotalCompletion:
      for (int j = 0; j < n; ++j) acc += completions[j];
      return acc;
    case ObjectiveKind::MaxFlow:
      acc = completions[0] - releases[0];
      for (int j = 1; j < n; ++j)
        if (completions[j] - releases[j] > acc)
          acc = completions[j] - releases[j];
      return acc;
    case ObjectiveKind::TotalFlow:
      for (int j = 0; j < n; ++j) acc += completions[j] - releases[j];
      return acc;
  }
  throw Error("objective: unknown kind");
}

// Lower bound on the final objective of any continuation when stages
// [stage, s) are still to be scheduled and `arrivals` are the completion
// times of stage-1 of them.  Uses the slot-relaxed recursion; exact (equal
// to the objective) when stage == s.
inline Rational continuation_floor(const Instance& inst, int stage,
                                   const std::vector<Rational>& arrivals,
                                   ObjectiveKind kind) {
  const int n = inst.job_count();
  std::vector<Rational> prev = arrivals;
  std::vector<Rational> row(n);
  for (int i = stage; i < inst.stage_count(); ++i) {
    const int slots = inst.stages[i].machines * inst.stages[i].batch_capacity;
    const Rational& p = inst.stages[i].processing_time;
    for (int j = 0; j < n; ++j) {
      Rational base = prev[j];
      if (j >= slots && row[j - slots] > base) base = row[j - slots];
      row[j] = base + p;
    }
    prev = row;
  }
  return objective_of(prev, inst.releases, kind);
}

}  // namespace oracle_detail

struct OracleResult {
  Rational value;
  BatchComposition composition;
  Schedule schedule;
};

// Builds the schedule determined by a composition tuple: stage after stage,
// each batch starts as early as possible (see realize_stage).
inline Schedule earliest_start_schedule(const Instance& inst,
                                        const BatchComposition& comp) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  if (static_cast<int>(comp.blocks.size()) != inst.stage_count())
    throw Error("composition: one block list per stage required");
  const int n = inst.job_count();
  for (int i = 0; i < inst.stage_count(); ++i) {
    int total = 0;
    for (int size : comp.blocks[i]) {
      if (size < 1 || size > inst.stages[i].batch_capacity)
        throw Error("composition: block size out of range at stage " +
                    std::to_string(i));
      total += size;
    }
    if (total != n)
      throw Error("composition: block sizes must sum to the job count");
  }
  Schedule sched;
  sched.instance = inst;
  std::vector<Rational> arrivals = inst.releases;
  for (int i = 0; i < inst.stage_count(); ++i) {
    const oracle_detail::RealizedStage realized =
        oracle_detail::realize_stage(arrivals, comp.blocks[i],
                                     inst.stages[i]);
    int offset = 0;
    for (std::size_t blk = 0; blk < comp.blocks[i].size(); ++blk) {
      BatchAssignment batch;
      batch.stage = i;
      batch.machine = realized.block_machines[blk];
      batch.start = QTime(realized.block_starts[blk]);
      for (int j = 0; j < comp.blocks[i][blk]; ++j)
        batch.jobs.push_back(offset + j);
      offset += comp.blocks[i][blk];
      sched.batches.push_back(std::move(batch));
    }
    arrivals = realized.completions;
  }
  sort_batches_canonically(sched.batches);
  return sched;
}

// Exhaustive minimum over release-order permutation schedules: every tuple
// of per-stage batch compositions, each realized with earliest starts.
// Deterministic: among optima, the lexicographically smallest composition
// tuple wins (compositions enumerated in lexicographic order, strict
// improvements only; the floor-based pruning below can only discard
// lex-larger candidates that are at best equal).
inline OracleResult optimal_permutation_schedule(
    const Instance& inst, ObjectiveKind kind,
    const OracleLimits& limits = {}) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  const int n = inst.job_count();
  const int s = inst.stage_count();
  if (n == 0) throw Error("oracle: undefined for an empty instance");
  if (n > limits.max_jobs)
    throw SizeCapError("oracle: instance has " + std::to_string(n) +
                       " jobs, exceeding the cap of " +
                       std::to_string(limits.max_jobs));
  unsigned long long leaves = 1;
  for (int i = 0; i < s; ++i) {
    const unsigned long long c = oracle_detail::count_compositions(
        n, inst.stages[i].batch_capacity);
    leaves = (leaves >= limits.max_leaves / c + 1)
                 ? oracle_detail::kCountCap
                 : leaves * c;
  }
  if (leaves > limits.max_leaves)
    throw SizeCapError(
        "oracle: composition tuple count exceeds the enumeration budget");

  std::optional<Rational> best;
  std::vector<std::vector<int>> chosen(s), winner;
  const auto dfs = [&](auto&& self, int stage,
                       const std::vector<Rational>& arrivals) -> void {
    if (best &&
        oracle_detail::continuation_floor(inst, stage, arrivals, kind) >=
            *best)
      return;
    if (stage == s) {
      // floor < best here, and at a leaf the floor is the exact value
      best = oracle_detail::continuation_floor(inst, stage, arrivals, kind);
      winner = chosen;
      return;
    }
    for (const std::vector<int>& blocks : oracle_detail::compositions(
             n, inst.stages[stage].batch_capacity)) {
      chosen[stage] = blocks;
      self(self,
           stage + 1,
           oracle_detail::realize_stage(arrivals, blocks, inst.stages[stage])
               .completions);
    }
  };
  dfs(dfs, 0, inst.releases);

  OracleResult result;
  result.value = *best;
  result.composition = BatchComposition{std::move(winner)};
  result.schedule = earliest_start_schedule(inst, result.composition);
  return result;
}

// Exhaustive minimum over permutation schedules with ANY job order (not
// just release order): used to confirm empirically that release order is
// never beaten.  Only the optimal value is reported.
inline Rational optimal_value_all_orders(const Instance& inst,
                                         ObjectiveKind kind,
                                         const OracleLimits& limits = {}) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  const int n = inst.job_count();
  const int s = inst.stage_count();
  if (n == 0) throw Error("oracle: undefined for an empty instance");
  if (n > limits.max_jobs_all_orders)
    throw SizeCapError("oracle: all-orders search capped at " +
                       std::to_string(limits.max_jobs_all_orders) + " jobs");

  std::optional<Rational> best;
  std::vector<Rational> order = inst.releases;  // already sorted
  do {
    const auto dfs = [&](auto&& self, int stage,
                         const std::vector<Rational>& arrivals) -> void {
      if (stage == s) {
        Rational value = oracle_detail::objective_of(arrivals, order, kind);
        if (!best || value < *best) best = std::move(value);
        return;
      }
      for (const std::vector<int>& blocks : oracle_detail::compositions(
               n, inst.stages[stage].batch_capacity))
        self(self,
             stage + 1,
             oracle_detail::realize_stage(arrivals, blocks,
                                          inst.stages[stage])
                 .completions);
    };
    dfs(dfs, 0, order);
  } while (std::next_permutation(order.begin(), order.end()));
  return *best;
}

// Exact optimum for one stage on one machine, any job count: dynamic
// program over "first j jobs done, machine frees at f" states, keeping per
// j only the Pareto-minimal (f, partial objective) pairs.
inline Rational single_stage_optimum(const Instance& inst,
                                     ObjectiveKind kind) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  if (inst.stage_count() != 1 || inst.stages[0].machines != 1)
    throw UnsupportedInstanceError(
        "oracle: the dynamic program handles exactly one stage with one "
        "machine");
  const int n = inst.job_count();
  if (n == 0) throw Error("oracle: undefined for an empty instance");
  const int cap = inst.stages[0].batch_capacity;
  const Rational& p = inst.stages[0].processing_time;

  std::vector<Rational> release_prefix(n + 1);
  for (int j = 0; j < n; ++j)
    release_prefix[j + 1] = release_prefix[j] + inst.releases[j];

  struct State {
    Rational frees;
    Rational acc;
  };
  // Keep only Pareto-minimal states: any continuation's cost is
  // nondecreasing in both the machine-free time and the partial objective.
  const auto prune = [](std::vector<State>& states) {
    std::sort(states.begin(), states.end(),
              [](const State& x, const State& y) {
                if (x.frees != y.frees) return x.frees < y.frees;
                return x.acc < y.acc;
              });
    std::vector<State> kept;
    for (State& st : states)
      if (kept.empty() || st.acc < kept.back().acc)
        kept.push_back(std::move(st));
    states = std::move(kept);
  };

  std::vector<std::vector<State>> layer(n + 1);
  layer[0].push_back(State{Rational(0), Rational(0)});
  for (int j = 0; j < n; ++j) {
    prune(layer[j]);  // complete: all predecessors of layer j are done
    for (const State& st : layer[j]) {
      for (int k = 1; k <= cap && j + k <= n; ++k) {
        Rational start = inst.releases[j + k - 1];
        if (st.frees > start) start = st.frees;
        const Rational done = start + p;
        Rational acc = st.acc;
        switch (kind) {
          case ObjectiveKind::Makespan:
            if (done > acc) acc = done;
            break;
          case ObjectiveKind::TotalCompletion:
            acc += k * done;
            break;
          case ObjectiveKind::MaxFlow:
            // releases are sorted, so the block's largest flow time is
            // that of its first job
            if (done - inst.releases[j] > acc) acc = done - inst.releases[j];
            break;
          case ObjectiveKind::TotalFlow:
            acc += k * done - (release_prefix[j + k] - release_prefix[j]);
            break;
        }
        layer[j + k].push_back(State{done, std::move(acc)});
      }
    }
    layer[j].clear();
  }
  Rational best = layer[n].front().acc;
  for (const State& st : layer[n])
    if (st.acc < best) best = st.acc;
  return best;
}

// The reference optimum used for competitive ratios: brute force within the
// cap, the exact dynamic program beyond it where applicable.
inline Rational oracle_optimum(const Instance& inst, ObjectiveKind kind,
                               const OracleLimits& limits = {}) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  if (inst.job_count() == 0)
    throw Error("oracle: undefined for an empty instance");
  const bool dp_applies =
      inst.stage_count() == 1 && inst.stages[0].machines == 1;
  if (inst.job_count() > limits.max_jobs) {
    if (dp_applies) return single_stage_optimum(inst, kind);
    throw SizeCapError("oracle: instance has " +
                       std::to_string(inst.job_count()) +
                       " jobs, exceeding the cap of " +
                       std::to_string(limits.max_jobs));
  }
  try {
    return optimal_permutation_schedule(inst, kind, limits).value;
  } catch (const SizeCapError&) {
    if (dp_applies) return single_stage_optimum(inst, kind);
    throw;
  }
}

// Exact ratio of a schedule's objective to the offline optimum of its
// instance.  At least 1 whenever the schedule was produced by a strategy.
inline QTime competitive_ratio(const Schedule& sched, ObjectiveKind kind,
                               const OracleLimits& limits = {}) {
  const QTime value = evaluate_objective(sched, kind);
  const Rational optimum = oracle_optimum(sched.instance, kind, limits);
  return value / QTime(optimum);
}

}  // namespace pffb
