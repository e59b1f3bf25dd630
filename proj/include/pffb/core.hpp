#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pffb/qtime.hpp"
#include "pffb/rational.hpp"

namespace pffb {

// The four regular objectives supported throughout: makespan, total
// completion time, maximum flow time, total flow time.  Flow time of a job
// is its completion time minus its release time.
enum class ObjectiveKind { Makespan, TotalCompletion, MaxFlow, TotalFlow };

inline const char* objective_name(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::Makespan: return "cmax";
    case ObjectiveKind::TotalCompletion: return "sumc";
    case ObjectiveKind::MaxFlow: return "fmax";
    case ObjectiveKind::TotalFlow: return "sumf";
  }
  throw Error("objective: unknown kind");
}

inline ObjectiveKind objective_from_name(const std::string& name) {
  if (name == "cmax") return ObjectiveKind::Makespan;
  if (name == "sumc") return ObjectiveKind::TotalCompletion;
  if (name == "fmax") return ObjectiveKind::MaxFlow;
  if (name == "sumf") return ObjectiveKind::TotalFlow;
  throw Error("objective: unknown name \"" + name +
              "\" (expected cmax, sumc, fmax, or sumf)");
}

inline const std::vector<ObjectiveKind>& all_objectives() {
  static const std::vector<ObjectiveKind> kinds = {
      ObjectiveKind::Makespan, ObjectiveKind::TotalCompletion,
      ObjectiveKind::MaxFlow, ObjectiveKind::TotalFlow};
  return kinds;
}

// One stage of the shop: `machines` identical parallel batching machines,
// each able to process up to `batch_capacity` jobs simultaneously, every
// batch taking exactly `processing_time`.
struct StageConfig {
  int machines = 1;
  int batch_capacity = 1;
  Rational processing_time = 1;

  friend bool operator==(const StageConfig&, const StageConfig&) = default;
};

// A proportionate flexible flow shop instance.  Jobs are identical apart
// from their release times; `releases` must be sorted nondecreasing, so job
// indices (0-based) follow earliest-release-date order by construction.
struct Instance {
  std::vector<StageConfig> stages;
  std::vector<Rational> releases;

  int stage_count() const { return static_cast<int>(stages.size()); }
  int job_count() const { return static_cast<int>(releases.size()); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct ValidationResult {
  bool ok = true;
  std::string message;

  static ValidationResult pass() { return {}; }
  static ValidationResult fail(std::string msg) {
    return {false, std::move(msg)};
  }
  explicit operator bool() const { return ok; }
};

inline ValidationResult validate_instance(const Instance& inst) {
  if (inst.stages.empty())
    return ValidationResult::fail("instance: needs at least one stage");
  for (int i = 0; i < inst.stage_count(); ++i) {
    const StageConfig& st = inst.stages[i];
    const std::string where = "instance: stage " + std::to_string(i);
    if (st.machines < 1)
      return ValidationResult::fail(where + ": machine count must be >= 1");
    if (st.batch_capacity < 1)
      return ValidationResult::fail(where + ": batch capacity must be >= 1");
    if (st.processing_time <= 0)
      return ValidationResult::fail(where + ": processing time must be > 0");
  }
  for (int j = 0; j < inst.job_count(); ++j) {
    if (inst.releases[j] < 0)
      return ValidationResult::fail("instance: job " + std::to_string(j) +
                                    ": release time must be >= 0");
    if (j > 0 && inst.releases[j] < inst.releases[j - 1])
      return ValidationResult::fail(
          "instance: releases must be sorted nondecreasing (job " +
          std::to_string(j) + ")");
  }
  return ValidationResult::pass();
}

// One batch: `jobs` (sorted, distinct, nonempty) start simultaneously on
// `machine` of `stage` at time `start` and complete `processing_time` later.
// The machine is busy over the half-open interval [start, start + p).
struct BatchAssignment {
  int stage = 0;
  int machine = 0;
  QTime start;
  std::vector<int> jobs;

  friend bool operator==(const BatchAssignment&,
                         const BatchAssignment&) = default;
};

struct Schedule {
  Instance instance;
  std::vector<BatchAssignment> batches;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Canonical batch order used by serialization and all deterministic output:
// by stage, then start time, then machine index.
inline void sort_batches_canonically(std::vector<BatchAssignment>& batches) {
  std::sort(batches.begin(), batches.end(),
            [](const BatchAssignment& x, const BatchAssignment& y) {
              if (x.stage != y.stage) return x.stage < y.stage;
              if (x.start != y.start) return x.start < y.start;
              return x.machine < y.machine;
            });
}

// Per-stage start and completion times of every job, indexed [stage][job].
// Requires every job to appear exactly once per stage; validate_schedule
// reports the violation instead of throwing.
struct TimeTable {
  std::vector<std::vector<QTime>> start;
  std::vector<std::vector<QTime>> completion;
};

inline TimeTable time_table(const Schedule& sched) {
  const int s = sched.instance.stage_count();
  const int n = sched.instance.job_count();
  TimeTable table;
  table.start.assign(s, std::vector<QTime>(n));
  table.completion.assign(s, std::vector<QTime>(n));
  std::vector<std::vector<int>> seen(s, std::vector<int>(n, 0));
  for (const BatchAssignment& batch : sched.batches) {
    if (batch.stage < 0 || batch.stage >= s)
      throw Error("schedule: batch stage out of range");
    for (int j : batch.jobs) {
      if (j < 0 || j >= n) throw Error("schedule: job index out of range");
      if (seen[batch.stage][j]++)
        throw Error("schedule: job " + std::to_string(j) +
                    " scheduled twice at stage " +
                    std::to_string(batch.stage));
      table.start[batch.stage][j] = batch.start;
      table.completion[batch.stage][j] =
          batch.start + QTime(sched.instance.stages[batch.stage].processing_time);
    }
  }
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < n; ++j)
      if (!seen[i][j])
        throw Error("schedule: job " + std::to_string(j) +
                    " missing at stage " + std::to_string(i));
  return table;
}

struct ScheduleCheck {
  bool ok = true;
  std::string message;
  // True when every stage processes the jobs in release order, i.e. the
  // per-stage completion times are nondecreasing in the job index.
  bool is_erd_permutation = false;

  explicit operator bool() const { return ok; }
};

// Feasibility check: batch shape, coverage, capacities, machine exclusivity
// (half-open busy intervals), release dates, and stage-to-stage precedence.
// Reports the first violation found, in the order listed above.
inline ScheduleCheck validate_schedule(const Schedule& sched) {
  const auto fail = [](std::string msg) {
    return ScheduleCheck{false, std::move(msg), false};
  };
  if (ValidationResult iv = validate_instance(sched.instance); !iv)
    return fail(iv.message);

  const Instance& inst = sched.instance;
  const int s = inst.stage_count();
  const int n = inst.job_count();

  for (std::size_t k = 0; k < sched.batches.size(); ++k) {
    const BatchAssignment& batch = sched.batches[k];
    const std::string where = "schedule: batch " + std::to_string(k);
    if (batch.stage < 0 || batch.stage >= s)
      return fail(where + ": stage out of range");
    if (batch.machine < 0 || batch.machine >= inst.stages[batch.stage].machines)
      return fail(where + ": machine out of range");
    if (batch.jobs.empty()) return fail(where + ": empty batch");
    if (!std::is_sorted(batch.jobs.begin(), batch.jobs.end()))
      return fail(where + ": jobs must be sorted");
    if (std::adjacent_find(batch.jobs.begin(), batch.jobs.end()) !=
        batch.jobs.end())
      return fail(where + ": duplicate job in batch");
    if (batch.jobs.front() < 0 || batch.jobs.back() >= n)
      return fail(where + ": job index out of range");
    if (static_cast<int>(batch.jobs.size()) >
        inst.stages[batch.stage].batch_capacity)
      return fail(where + ": batch exceeds capacity");
  }

  TimeTable table;
  try {
    table = time_table(sched);
  } catch (const Error& e) {
    return fail(e.what());
  }

  // Machine exclusivity: on each machine, consecutive batches (by start)
  // must be at least one processing time apart.
  std::map<std::pair<int, int>, std::vector<QTime>> machine_starts;
  for (const BatchAssignment& batch : sched.batches)
    machine_starts[{batch.stage, batch.machine}].push_back(batch.start);
  for (auto& [key, starts] : machine_starts) {
    std::sort(starts.begin(), starts.end());
    const QTime p{inst.stages[key.first].processing_time};
    for (std::size_t k = 1; k < starts.size(); ++k)
      if (starts[k] - starts[k - 1] < p)
        return fail("schedule: overlapping batches on stage " +
                    std::to_string(key.first) + " machine " +
                    std::to_string(key.second));
  }

  for (int j = 0; j < n; ++j) {
    if (table.start[0][j] < QTime(inst.releases[j]))
      return fail("schedule: job " + std::to_string(j) +
                  " starts before its release");
    for (int i = 1; i < s; ++i)
      if (table.start[i][j] < table.completion[i - 1][j])
        return fail("schedule: job " + std::to_string(j) + " starts stage " +
                    std::to_string(i) + " before completing stage " +
                    std::to_string(i - 1));
  }

  ScheduleCheck result;
  result.is_erd_permutation = true;
  for (int i = 0; i < s && result.is_erd_permutation; ++i)
    for (int j = 1; j < n; ++j)
      if (table.completion[i][j] < table.completion[i][j - 1]) {
        result.is_erd_permutation = false;
        break;
      }
  return result;
}

inline QTime evaluate_objective(const Schedule& sched, ObjectiveKind kind) {
  const int n = sched.instance.job_count();
  if (n == 0) throw Error("objective: undefined for an empty instance");
  const TimeTable table = time_table(sched);
  const std::vector<QTime>& last = table.completion.back();
  QTime acc;
  switch (kind) {
    case ObjectiveKind::Makespan:
      acc = last[0];
      for (int j = 1; j < n; ++j) acc = max(acc, last[j]);
      return acc;
    case ObjectiveKind::TotalCompletion:
      for (int j = 0; j < n; ++j) acc += last[j];
      return acc;
    case ObjectiveKind::MaxFlow:
      acc = last[0] - QTime(sched.instance.releases[0]);
      for (int j = 1; j < n; ++j)
        acc = max(acc, last[j] - QTime(sched.instance.releases[j]));
      return acc;
    case ObjectiveKind::TotalFlow:
      for (int j = 0; j < n; ++j)
        acc += last[j] - QTime(sched.instance.releases[j]);
      return acc;
  }
  throw Error("objective: unknown kind");
}

}  // namespace pffb
