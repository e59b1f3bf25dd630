#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pffb/engine.hpp"

namespace pffb {

// Reactive opponent for single-stage games: one machine, unit processing
// time, capacity b1.  J1 arrives at time 0.  If the strategy starts a batch
// consisting of only J1 at a time no later than `threshold`, the adversary
// answers with b1-1 more jobs released just afterwards; if the start comes
// later, no further job ever arrives.  (Before the reaction J1 is the only
// job, so any started batch consists of exactly J1.)
class ThresholdAdversary : public JobSource {
 public:
  ThresholdAdversary(int b1, Rational eps, QTime threshold)
      : b1_(b1), eps_(std::move(eps)), threshold_(std::move(threshold)) {
    if (b1_ < 1) throw Error("adversary: batch capacity must be >= 1");
    if (!(eps_ > 0)) throw Error("adversary: eps must be > 0");
  }

  std::vector<StageConfig> stages() override {
    return {StageConfig{1, b1_, Rational(1)}};
  }

  std::vector<Rational> initial_releases() override { return {Rational(0)}; }

  std::vector<Rational> observe(const QTime& now,
                                const StrategyDecision& decision,
                                const SimState&) override {
    if (resolved_ || decision.starts.empty()) return {};
    resolved_ = true;
    if (threshold_ < now) return {};
    // React at a rational instant strictly after `now`; when the start
    // time is rational this is exactly now + eps.
    const Rational reaction = rational_above(now, now + QTime(eps_));
    return std::vector<Rational>(b1_ - 1, reaction);
  }

  bool exhausted() const override { return resolved_; }

 private:
  int b1_;
  Rational eps_;
  QTime threshold_;
  bool resolved_ = false;
};

inline Rational default_adversary_eps(int b1) {
  return make_rational(1, 10 * static_cast<BigInt>(b1));
}

// Game that forces total completion time ratios approaching 2: the decision
// threshold is phi - 1.
inline std::unique_ptr<JobSource> adversary_sum_cj(int b1, Rational eps) {
  return std::make_unique<ThresholdAdversary>(
      b1, std::move(eps), QTime::golden_ratio() - QTime(1));
}
inline std::unique_ptr<JobSource> adversary_sum_cj(int b1) {
  return adversary_sum_cj(b1, default_adversary_eps(b1));
}

// Same game for total flow time; the threshold is 1.
inline std::unique_ptr<JobSource> adversary_sum_fj(int b1, Rational eps) {
  return std::make_unique<ThresholdAdversary>(b1, std::move(eps), QTime(1));
}
inline std::unique_ptr<JobSource> adversary_sum_fj(int b1) {
  return adversary_sum_fj(b1, default_adversary_eps(b1));
}

// A static witness instance together with the schedule it is compared
// against.
struct WitnessFamily {
  Instance instance;
  Schedule reference;
};

// Single-stage family on which never-wait is a factor 2 - alpha worse than
// the reference: m1 machines, capacity b1 = (4 - alpha)/alpha, unit
// processing time, n = m1*b1 jobs released at 0, eps, 2 eps, ...,
// (m1-1) eps and then all remaining at m1*eps with eps = 1/(m1*b1).  The
// reference schedule waits until the last release and runs everything in m1
// full batches.
inline WitnessFamily never_wait_tightness_instance(const Rational& alpha,
                                                   int m1) {
  if (m1 < 1) throw Error("tightness family: m1 must be >= 1");
  if (!(alpha > 0)) throw Error("tightness family: alpha must be > 0");
  const Rational b1_rational = (Rational(4) - alpha) / alpha;
  if (!is_integer(b1_rational) || b1_rational < 1)
    throw Error("tightness family: (4 - alpha)/alpha must be a positive "
                "integer, got " + to_display_string(b1_rational));
  if (b1_rational > 100000)
    throw Error("tightness family: capacity (4 - alpha)/alpha is too large");
  const int b1 = numerator(b1_rational).convert_to<int>();
  const int n = m1 * b1;
  const Rational eps = make_rational(1, n);

  WitnessFamily family;
  family.instance.stages = {StageConfig{m1, b1, Rational(1)}};
  for (int j = 0; j < n; ++j)
    family.instance.releases.push_back(
        Rational(j < m1 ? j : m1) * eps);

  family.reference.instance = family.instance;
  const QTime start{Rational(m1) * eps};
  for (int k = 0; k < m1; ++k) {
    BatchAssignment batch;
    batch.stage = 0;
    batch.machine = k;
    batch.start = start;
    for (int j = k * b1; j < (k + 1) * b1; ++j) batch.jobs.push_back(j);
    family.reference.batches.push_back(std::move(batch));
  }
  sort_batches_canonically(family.reference.batches);
  return family;
}

// Zero-release family with 10*alpha alternating stages (slow wide stages
// with p=2 and capacity n, fast serial stages with p=1 and capacity 1) and
// n = 5*alpha jobs.  Full-batch gathers everything at each wide stage and
// pays quadratically; the reference schedule pipelines singleton batches,
// job j entering the first stage at time 2j.
inline WitnessFamily full_batch_family(int alpha) {
  if (alpha < 1) throw Error("full-batch family: alpha must be >= 1");
  const int s = 10 * alpha;
  const int n = 5 * alpha;

  WitnessFamily family;
  for (int i = 0; i < s; ++i) {
    if (i % 2 == 0)
      family.instance.stages.push_back(StageConfig{1, n, Rational(2)});
    else
      family.instance.stages.push_back(StageConfig{1, 1, Rational(1)});
  }
  family.instance.releases.assign(n, Rational(0));

  family.reference.instance = family.instance;
  for (int j = 0; j < n; ++j) {
    Rational clock(2 * j);
    for (int i = 0; i < s; ++i) {
      family.reference.batches.push_back(
          BatchAssignment{i, 0, QTime(clock), {j}});
      clock += family.instance.stages[i].processing_time;
    }
  }
  sort_batches_canonically(family.reference.batches);
  return family;
}

// Small static single-stage stress instances with capacity 2 and staggered
// releases, kept as regression fodder for ratio floors on makespan and
// maximum flow time.  Capacities above 2 add nothing here, and below 2
// batching is trivial, hence the empty answer.
inline std::vector<Instance> thm1_families(int b_max) {
  if (b_max < 2) return {};
  std::vector<Instance> out;
  out.push_back(Instance{{StageConfig{1, 2, Rational(1)}},
                         {Rational(0), make_rational(1, 2)}});
  out.push_back(Instance{{StageConfig{1, 2, Rational(1)}},
                         {Rational(0), Rational(1)}});
  out.push_back(Instance{{StageConfig{2, 2, Rational(1)}},
                         {Rational(0), make_rational(1, 4),
                          make_rational(1, 2), make_rational(3, 4)}});
  return out;
}

}  // namespace pffb
