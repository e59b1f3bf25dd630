#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pffb/engine.hpp"

namespace pffb {

// Starts a batch whenever a machine is idle and at least one job is
// available, batching as many of the earliest available jobs as fit.
class NeverWaitStrategy : public Strategy {
 public:
  std::string name() const override { return "never-wait"; }

  StrategyDecision decide(const SimState& state) override {
    StrategyDecision d;
    for (int i = 0; i < state.stage_count(); ++i) fill_stage(state, i, d);
    return d;
  }

  // Shared greedy: load idle machines of one stage with maximal batches of
  // the earliest available jobs.  Also used by the other strategies.
  static void fill_stage(const SimState& state, int stage,
                         StrategyDecision& d) {
    const StageConfig& st = state.stage(stage);
    int next = state.started_count(stage);
    int avail = state.available_count(stage);
    for (int k = 0; k < st.machines && avail > 0; ++k) {
      if (!state.machine_idle(stage, k)) continue;
      const int take = avail < st.batch_capacity ? avail : st.batch_capacity;
      std::vector<int> jobs(take);
      for (int j = 0; j < take; ++j) jobs[j] = next + j;
      d.starts.push_back(BatchStart{stage, k, std::move(jobs)});
      next += take;
      avail -= take;
    }
  }
};

// Starts only full batches, except that once the end of the stream is known
// and fewer jobs than one capacity remain at a stage, the leftover jobs may
// go as one final short batch as soon as all of them are available.
class FullBatchStrategy : public Strategy {
 public:
  std::string name() const override { return "full-batch"; }

  StrategyDecision decide(const SimState& state) override {
    StrategyDecision d;
    for (int i = 0; i < state.stage_count(); ++i) {
      const StageConfig& st = state.stage(i);
      int next = state.started_count(i);
      int avail = state.available_count(i);
      int machine = 0;
      const auto idle = [&]() -> int {
        for (; machine < st.machines; ++machine)
          if (state.machine_idle(i, machine)) return machine++;
        return -1;
      };
      while (avail >= st.batch_capacity) {
        const int k = idle();
        if (k < 0) break;
        std::vector<int> jobs(st.batch_capacity);
        for (int j = 0; j < st.batch_capacity; ++j) jobs[j] = next + j;
        d.starts.push_back(BatchStart{i, k, std::move(jobs)});
        next += st.batch_capacity;
        avail -= st.batch_capacity;
      }
      if (state.end_of_stream() && avail > 0) {
        const int remaining = state.released_count() - next;
        if (remaining < st.batch_capacity && avail == remaining) {
          if (const int k = idle(); k >= 0) {
            std::vector<int> jobs(remaining);
            for (int j = 0; j < remaining; ++j) jobs[j] = next + j;
            d.starts.push_back(BatchStart{i, k, std::move(jobs)});
          }
        }
      }
    }
    return d;
  }
};

// The periodic instants at which the switching strategy may start stage-1
// batches: offset + k*period for integers k >= 0.
struct StartingInstantGrid {
  QTime offset;
  QTime period;

  bool contains(const QTime& tau) const {
    if (tau < offset) return false;
    const BigInt k = floor_to_integer((tau - offset) / period);
    return offset + QTime(Rational(k)) * period == tau;
  }

  QTime next_at_or_after(const QTime& tau) const {
    if (!(offset < tau)) return offset;
    const BigInt k = ceil_to_integer((tau - offset) / period);
    return offset + QTime(Rational(k)) * period;
  }

  QTime next_after(const QTime& tau) const {
    if (!(offset < tau)) return offset > tau ? offset : offset + period;
    const BigInt k = floor_to_integer((tau - offset) / period) + 1;
    return offset + QTime(Rational(k)) * period;
  }
};

// Two-stage strategy built around the switch time
//   t = phi*p_1 + (phi - 1)*p_2.
// Stage 1 starts (maximal) batches only at grid instants congruent to t
// modulo p_1, the first being t - floor(t/p_1)*p_1; stage 2 stays idle
// until time t and behaves like never-wait afterwards.
class TSwitchStrategy : public Strategy {
 public:
  std::string name() const override { return "t-switch"; }

  void prepare(const std::vector<StageConfig>& stages) override {
    if (stages.size() != 2)
      throw UnsupportedInstanceError(
          "t-switch: defined only for two-stage instances");
    const QTime phi = QTime::golden_ratio();
    const QTime p1{stages[0].processing_time};
    const QTime p2{stages[1].processing_time};
    switch_time_ = phi * p1 + (phi - QTime(1)) * p2;
    grid_.period = p1;
    grid_.offset =
        switch_time_ - QTime(Rational(floor_to_integer(switch_time_ / p1))) * p1;
  }

  const StartingInstantGrid& grid() const { return grid_; }
  const QTime& switch_time() const { return switch_time_; }

  StrategyDecision decide(const SimState& state) override {
    StrategyDecision d;
    if (state.available_count(0) > 0) {
      if (grid_.contains(state.now()))
        NeverWaitStrategy::fill_stage(state, 0, d);
      else
        d.wakeups.push_back(WakeUpRequest{0, grid_.next_after(state.now())});
    }
    if (state.now() < switch_time_) {
      if (state.available_count(1) > 0)
        d.wakeups.push_back(WakeUpRequest{1, switch_time_});
    } else {
      NeverWaitStrategy::fill_stage(state, 1, d);
    }
    return d;
  }

 private:
  StartingInstantGrid grid_;
  QTime switch_time_;
};

inline std::unique_ptr<Strategy> make_strategy(const std::string& name) {
  if (name == "never-wait") return std::make_unique<NeverWaitStrategy>();
  if (name == "full-batch") return std::make_unique<FullBatchStrategy>();
  if (name == "t-switch") return std::make_unique<TSwitchStrategy>();
  throw Error("strategy: unknown name \"" + name +
              "\" (expected never-wait, full-batch, or t-switch)");
}

}  // namespace pffb
