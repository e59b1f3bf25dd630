#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pffb/core.hpp"

namespace pffb {

struct SimulationError : Error {
  using Error::Error;
};

// Tie order at equal times: releases become visible first, then batches
// complete (freeing machines and feeding the next stage), then wake-ups.
// All events at one time point are processed before the single strategy
// decision for that time point.
enum class EventKind { JobRelease = 0, BatchCompletion = 1, WakeUp = 2 };

struct Event {
  QTime time;
  EventKind kind = EventKind::WakeUp;
  int stage = -1;    // BatchCompletion and WakeUp
  int machine = -1;  // BatchCompletion only
  int job = -1;      // JobRelease only

  friend bool operator==(const Event&, const Event&) = default;
  friend auto operator<=>(const Event&, const Event&) = default;
};

// One batch start requested by a strategy: the given jobs begin now on
// `machine` of `stage`.  Jobs must be exactly the earliest released,
// not-yet-started jobs of that stage (the engine enforces this, which keeps
// every simulated schedule a release-order permutation schedule).
struct BatchStart {
  int stage = 0;
  int machine = 0;
  std::vector<int> jobs;

  friend bool operator==(const BatchStart&, const BatchStart&) = default;
};

struct WakeUpRequest {
  int stage = 0;
  QTime time;

  friend bool operator==(const WakeUpRequest&, const WakeUpRequest&) = default;
};

struct StrategyDecision {
  std::vector<BatchStart> starts;
  std::vector<WakeUpRequest> wakeups;

  bool empty() const { return starts.empty() && wakeups.empty(); }

  friend bool operator==(const StrategyDecision&,
                         const StrategyDecision&) = default;
};

// Read-only view of the simulation handed to strategies and job sources.
// Only information an online algorithm may legally use is exposed: the
// stage configuration, everything released so far, machine occupancy, and
// whether the stream of jobs has provably ended.
class SimState {
 public:
  int stage_count() const { return static_cast<int>(stages_.size()); }
  const StageConfig& stage(int i) const { return stages_.at(i); }
  const std::vector<StageConfig>& stages() const { return stages_; }

  const QTime& now() const { return now_; }

  // Releases observed so far, in release order (job j has release
  // released_times()[j]).
  int released_count() const { return static_cast<int>(released_.size()); }
  const std::vector<Rational>& released_times() const { return released_; }

  // True once no further job can ever arrive.
  bool end_of_stream() const { return eos_; }

  // Jobs [0, ready_count(i)) have arrived at stage i; jobs
  // [0, started_count(i)) have already been batched there.  The available
  // jobs are the half-open index range in between.
  int ready_count(int stage) const { return ready_.at(stage); }
  int started_count(int stage) const { return started_.at(stage); }
  int available_count(int stage) const {
    return ready_.at(stage) - started_.at(stage);
  }

  const QTime& machine_free_at(int stage, int machine) const {
    return free_at_.at(stage).at(machine);
  }
  bool machine_idle(int stage, int machine) const {
    return !(now_ < free_at_.at(stage).at(machine));
  }

 private:
  friend class Simulator;

  std::vector<StageConfig> stages_;
  QTime now_;
  std::vector<Rational> released_;
  bool eos_ = false;
  std::vector<int> ready_;
  std::vector<int> started_;
  std::vector<std::vector<QTime>> free_at_;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  // Called once before any event; strategies precompute here and reject
  // instance shapes they do not support.
  virtual void prepare(const std::vector<StageConfig>& stages) { (void)stages; }
  virtual StrategyDecision decide(const SimState& state) = 0;
};

// Produces the job stream.  A static source plays back a fixed instance;
// an adversary inspects every decision as it is made and may answer with
// additional releases, which must lie strictly in the future and must not
// go below any release it already announced.
class JobSource {
 public:
  virtual ~JobSource() = default;
  virtual std::vector<StageConfig> stages() = 0;
  virtual std::vector<Rational> initial_releases() = 0;
  virtual std::vector<Rational> observe(const QTime& now,
                                        const StrategyDecision& decision,
                                        const SimState& state) = 0;
  // True once the source guarantees it will never emit another job.
  virtual bool exhausted() const = 0;
};

class StaticSource : public JobSource {
 public:
  explicit StaticSource(Instance inst) : inst_(std::move(inst)) {}

  std::vector<StageConfig> stages() override { return inst_.stages; }
  std::vector<Rational> initial_releases() override { return inst_.releases; }
  std::vector<Rational> observe(const QTime&, const StrategyDecision&,
                                const SimState&) override {
    return {};
  }
  bool exhausted() const override { return true; }

 private:
  Instance inst_;
};

struct TraceStep {
  QTime time;
  std::vector<Event> events;
  StrategyDecision decision;
};

struct SimulationTrace {
  std::vector<TraceStep> steps;
  // Final schedule over the realized instance (for adversary games, the
  // instance that materialized from the emitted releases).
  Schedule schedule;
};

class Simulator {
 public:
  Simulator(JobSource& source, Strategy& strategy)
      : source_(source), strategy_(strategy) {}

  SimulationTrace run() {
    init();
    while (!queue_.empty()) {
      if (++rounds_ > kRoundBudget)
        throw SimulationError("simulation: event budget exceeded");
      const QTime tau = queue_.begin()->time;
      std::vector<Event> fired;
      while (!queue_.empty() && queue_.begin()->time == tau) {
        fired.push_back(*queue_.begin());
        queue_.erase(queue_.begin());
        process(fired.back());
      }
      state_.now_ = tau;
      refresh_eos();
      StrategyDecision decision = strategy_.decide(state_);
      apply(decision);
      absorb_releases(source_.observe(tau, decision, state_), tau);
      refresh_eos();
      trace_.steps.push_back({tau, std::move(fired), std::move(decision)});
    }
    if (done_ != emitted_ || !source_.exhausted()) {
      if (done_ == emitted_)
        throw SimulationError(
            "simulation stalled: the job source is still active but no "
            "further event is pending");
      throw SimulationError(
          "simulation deadlock: " + std::to_string(emitted_ - done_) +
          " job(s) unfinished but no further event is pending");
    }
    finish();
    return std::move(trace_);
  }

 private:
  static constexpr long kRoundBudget = 1'000'000;

  void init() {
    state_.stages_ = source_.stages();
    Instance shape{state_.stages_, {}};
    if (ValidationResult v = validate_instance(shape); !v)
      throw Error(v.message);
    const int s = state_.stage_count();
    state_.ready_.assign(s, 0);
    state_.started_.assign(s, 0);
    state_.free_at_.resize(s);
    running_.resize(s);
    for (int i = 0; i < s; ++i) {
      state_.free_at_[i].assign(state_.stages_[i].machines, QTime(0));
      running_[i].assign(state_.stages_[i].machines, 0);
    }
    strategy_.prepare(state_.stages_);
    std::vector<Rational> first = source_.initial_releases();
    for (const Rational& r : first) {
      if (r < 0)
        throw SimulationError("job source: release time must be >= 0");
      enqueue_release(r);
    }
    refresh_eos();
  }

  void enqueue_release(const Rational& r) {
    if (emitted_ > 0 && r < last_release_)
      throw SimulationError(
          "job source: release times must be nondecreasing");
    last_release_ = r;
    queue_.insert(Event{QTime(r), EventKind::JobRelease, -1, -1, emitted_});
    ++emitted_;
    ++pending_releases_;
  }

  void process(const Event& ev) {
    switch (ev.kind) {
      case EventKind::JobRelease:
        state_.released_.push_back(ev.time.a);
        ++state_.ready_[0];
        --pending_releases_;
        break;
      case EventKind::BatchCompletion: {
        const int size = running_[ev.stage][ev.machine];
        running_[ev.stage][ev.machine] = 0;
        if (ev.stage + 1 < state_.stage_count())
          state_.ready_[ev.stage + 1] += size;
        else
          done_ += size;
        break;
      }
      case EventKind::WakeUp:
        break;  // only exists to trigger a decision
    }
  }

  void refresh_eos() {
    state_.eos_ = source_.exhausted() && pending_releases_ == 0;
  }

  void apply(const StrategyDecision& decision) {
    std::map<int, std::vector<int>> claimed;
    for (const BatchStart& bs : decision.starts) {
      if (bs.stage < 0 || bs.stage >= state_.stage_count())
        throw SimulationError("decision: stage out of range");
      const StageConfig& st = state_.stages_[bs.stage];
      if (bs.machine < 0 || bs.machine >= st.machines)
        throw SimulationError("decision: machine out of range");
      if (bs.jobs.empty()) throw SimulationError("decision: empty batch");
      if (!std::is_sorted(bs.jobs.begin(), bs.jobs.end()) ||
          std::adjacent_find(bs.jobs.begin(), bs.jobs.end()) != bs.jobs.end())
        throw SimulationError("decision: batch jobs must be sorted, distinct");
      if (static_cast<int>(bs.jobs.size()) > st.batch_capacity)
        throw SimulationError("decision: batch exceeds capacity");
      if (state_.now_ < state_.free_at_[bs.stage][bs.machine])
        throw SimulationError("decision: machine is busy");
      for (int j : bs.jobs) {
        if (j < 0 || j >= state_.ready_[bs.stage])
          throw SimulationError(
              "decision: job has not arrived at this stage yet");
      }
      state_.free_at_[bs.stage][bs.machine] =
          state_.now_ + QTime(st.processing_time);
      running_[bs.stage][bs.machine] = static_cast<int>(bs.jobs.size());
      queue_.insert(Event{state_.free_at_[bs.stage][bs.machine],
                          EventKind::BatchCompletion, bs.stage, bs.machine,
                          -1});
      batches_.push_back(
          BatchAssignment{bs.stage, bs.machine, state_.now_, bs.jobs});
      auto& list = claimed[bs.stage];
      list.insert(list.end(), bs.jobs.begin(), bs.jobs.end());
    }
    // Release-order rule: per stage, this decision's starts must take
    // exactly the earliest released unstarted jobs, with none skipped.
    for (auto& [stage, jobs] : claimed) {
      std::sort(jobs.begin(), jobs.end());
      int expect = state_.started_[stage];
      for (int j : jobs) {
        if (j != expect)
          throw SimulationError(
              "decision: stage " + std::to_string(stage) +
              " starts must extend the started prefix in release order");
        ++expect;
      }
      state_.started_[stage] = expect;
    }
    for (const WakeUpRequest& w : decision.wakeups) {
      if (w.stage < 0 || w.stage >= state_.stage_count())
        throw SimulationError("decision: wake-up stage out of range");
      if (!(state_.now_ < w.time))
        throw SimulationError("decision: wake-up must be in the future");
      queue_.insert(Event{w.time, EventKind::WakeUp, w.stage, -1, -1});
    }
  }

  void absorb_releases(const std::vector<Rational>& emissions,
                       const QTime& tau) {
    for (const Rational& r : emissions) {
      if (!(tau < QTime(r)))
        throw SimulationError(
            "job source: reactive releases must be strictly in the future");
      enqueue_release(r);
    }
  }

  void finish() {
    Instance realized{state_.stages_, state_.released_};
    sort_batches_canonically(batches_);
    trace_.schedule = Schedule{std::move(realized), std::move(batches_)};
    if (ScheduleCheck check = validate_schedule(trace_.schedule); !check)
      throw SimulationError("simulation produced an infeasible schedule: " +
                            check.message);
  }

  JobSource& source_;
  Strategy& strategy_;
  SimState state_;
  std::set<Event> queue_;
  std::vector<std::vector<int>> running_;  // batch size per (stage, machine)
  std::vector<BatchAssignment> batches_;
  SimulationTrace trace_;
  Rational last_release_ = 0;
  int emitted_ = 0;
  int pending_releases_ = 0;
  int done_ = 0;
  long rounds_ = 0;
};

// Runs a strategy on a fixed instance.
inline SimulationTrace simulate(const Instance& inst, Strategy& strategy) {
  if (ValidationResult v = validate_instance(inst); !v) throw Error(v.message);
  StaticSource source(inst);
  return Simulator(source, strategy).run();
}

// Plays the online game: the source watches every decision and may answer
// with more jobs.  The realized instance is trace.schedule.instance.
inline SimulationTrace run_adversary_game(JobSource& source,
                                          Strategy& strategy) {
  return Simulator(source, strategy).run();
}

}  // namespace pffb
