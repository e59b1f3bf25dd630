#pragma once

#include <set>
#include <string>
#include <vector>

#include "pffb/core.hpp"

namespace pffb {

// entries[i][j]: a lower bound on the time by which the (j+1)-th stage-i
// completion can occur in any feasible schedule.  All entries are rational
// because releases and processing times are.
struct BoundMatrix {
  std::vector<std::vector<Rational>> entries;

  int stage_count() const { return static_cast<int>(entries.size()); }
  int job_count() const {
    return entries.empty() ? 0 : static_cast<int>(entries[0].size());
  }
  const Rational& at(int stage, int job) const {
    return entries.at(stage).at(job);
  }
};

// Completion-time lower bounds via the recursion
//   c[0][j]  = r_j + p_0                          (seeded by releases)
//   c[i][j]  = max(c[i-1][j], c[i][j - m_i*b_i]) + p_i
// where the second argument is absent (treated as -infinity) whenever
// j < m_i*b_i.  Intuition: job j cannot finish stage i before it finished
// stage i-1 plus p_i, and the m_i*b_i-th predecessor batch-slot must have
// been vacated first.
inline BoundMatrix lower_bound_matrix(const Instance& inst) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  const int s = inst.stage_count();
  const int n = inst.job_count();
  BoundMatrix m;
  m.entries.assign(s, std::vector<Rational>(n));
  std::vector<Rational> prev(inst.releases);
  for (int i = 0; i < s; ++i) {
    const int slots = inst.stages[i].machines * inst.stages[i].batch_capacity;
    const Rational& p = inst.stages[i].processing_time;
    std::vector<Rational>& row = m.entries[i];
    for (int j = 0; j < n; ++j) {
      Rational base = prev[j];
      if (j >= slots && row[j - slots] > base) base = row[j - slots];
      row[j] = base + p;
    }
    prev = row;
  }
  return m;
}

// Counting bound for a single entry: the (j+1)-th stage-i completion needs
// ceil((j+1) / (m_i*b_i)) full batch rounds of that stage.  Indices 0-based.
inline Rational simple_lower_bound(const Instance& inst, int stage, int job) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  if (stage < 0 || stage >= inst.stage_count())
    throw Error("bound: stage index out of range");
  if (job < 0 || job >= inst.job_count())
    throw Error("bound: job index out of range");
  const int slots =
      inst.stages[stage].machines * inst.stages[stage].batch_capacity;
  const BigInt rounds = ceil_to_integer(make_rational(job + 1, slots));
  return Rational(rounds) * inst.stages[stage].processing_time;
}

// Makespan lower bound for single-machine stages without release dates:
//   max over job j and pivot stage k >= 1 of
//     ceil((j+1)/b_0) p_0 + sum_{1 <= i < k} p_i
//     + ceil((n-j)/b_k) p_k + sum_{k < i < s} p_i
// together with the pivot-at-entry term ceil(n/b_0) p_0 + sum_{1 <= i} p_i
// (0-based indices; the first and pivot terms count batch rounds before and
// at the pivot stage).  Taking the pivot at the entry stage must count every
// job exactly once there — splitting at job j would charge its entry-stage
// processing twice and overshoot the optimum.
inline Rational sung_bound(const Instance& inst) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  for (const StageConfig& st : inst.stages)
    if (st.machines != 1)
      throw UnsupportedInstanceError(
          "sung bound: requires exactly one machine per stage");
  for (const Rational& r : inst.releases)
    if (r != 0)
      throw UnsupportedInstanceError(
          "sung bound: requires all release times to be zero");
  const int s = inst.stage_count();
  const int n = inst.job_count();
  if (n == 0)
    throw Error("sung bound: undefined for an empty instance");

  std::vector<Rational> suffix(s + 1, Rational(0));
  for (int i = s - 1; i >= 0; --i)
    suffix[i] = suffix[i + 1] + inst.stages[i].processing_time;

  Rational best =
      Rational(ceil_to_integer(
          make_rational(n, inst.stages[0].batch_capacity))) *
          inst.stages[0].processing_time +
      suffix[1];
  Rational head(0);  // sum of p_i for 0 < i < k
  for (int k = 1; k < s; ++k) {
    if (k >= 2) head += inst.stages[k - 1].processing_time;
    for (int j = 0; j < n; ++j) {
      const Rational first =
          Rational(ceil_to_integer(
              make_rational(j + 1, inst.stages[0].batch_capacity))) *
          inst.stages[0].processing_time;
      const Rational pivot =
          Rational(ceil_to_integer(
              make_rational(n - j, inst.stages[k].batch_capacity))) *
          inst.stages[k].processing_time;
      const Rational value = first + head + pivot + suffix[k + 1];
      if (value > best) best = value;
    }
  }
  return best;
}

// Independent route to the same bounds: relax each stage into
// machines*batch_capacity unit-capacity machines and list-schedule the jobs
// in release order, always grabbing the earliest-free slot.  Equality with
// lower_bound_matrix is asserted by the test suite, not assumed here.
inline BoundMatrix pff_correspondence(const Instance& inst) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  const int s = inst.stage_count();
  const int n = inst.job_count();
  BoundMatrix m;
  m.entries.assign(s, std::vector<Rational>(n));
  std::vector<Rational> prev(inst.releases);
  for (int i = 0; i < s; ++i) {
    const int slots = inst.stages[i].machines * inst.stages[i].batch_capacity;
    const Rational& p = inst.stages[i].processing_time;
    std::multiset<Rational> free_at;
    for (int k = 0; k < slots; ++k) free_at.insert(Rational(0));
    for (int j = 0; j < n; ++j) {
      auto earliest = free_at.begin();
      Rational start = prev[j] > *earliest ? prev[j] : *earliest;
      free_at.erase(earliest);
      const Rational done = start + p;
      free_at.insert(done);
      m.entries[i][j] = done;
    }
    prev = m.entries[i];
  }
  return m;
}

// Instance-level objective floor derived from the final row of the bound
// matrix: the (j+1)-th smallest last-stage completion of ANY feasible
// schedule is at least entries[s-1][j], which bounds each objective below.
inline Rational objective_floor(const Instance& inst, const BoundMatrix& m,
                                ObjectiveKind kind) {
  const int n = inst.job_count();
  if (n == 0) throw Error("objective floor: undefined for an empty instance");
  const std::vector<Rational>& last = m.entries.back();
  Rational acc;
  switch (kind) {
    case ObjectiveKind::Makespan:
      return last[n - 1];
    case ObjectiveKind::TotalCompletion:
      for (int j = 0; j < n; ++j) acc += last[j];
      return acc;
    case ObjectiveKind::MaxFlow:
      acc = last[0] - inst.releases[0];
      for (int j = 1; j < n; ++j)
        if (last[j] - inst.releases[j] > acc) acc = last[j] - inst.releases[j];
      return acc;
    case ObjectiveKind::TotalFlow:
      for (int j = 0; j < n; ++j) acc += last[j] - inst.releases[j];
      return acc;
  }
  throw Error("objective floor: unknown kind");
}

}  // namespace pffb
