// Command-line front end for the pffb library: bounds, strategy runs,
// brute-force optima, adversary games, comparisons, and Gantt charts.
// Exit codes: 0 success, 1 validation/usage error, 2 size-cap exceeded.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pffb/pffb.hpp"

namespace {

using namespace pffb;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) {
  Instance inst = instance_from_json(load_json(path));
  if (ValidationResult v = validate_instance(inst); !v)
    throw Error(path + ": " + v.message);
  return inst;
}

Schedule load_schedule(const std::string& path, Instance inst) {
  json j = load_json(path);
  // Accepts both a bare schedule object and the wrapper `pffb run` emits.
  if (j.is_object() && j.contains("schedule")) j = j.at("schedule");
  return schedule_from_json(j, std::move(inst));
}

void emit(const json& j) { std::cout << dump_canonical(j) << "\n"; }

json objectives_json(const Schedule& sched) {
  json out;
  for (ObjectiveKind kind : all_objectives())
    out[objective_name(kind)] = qtime_to_json(evaluate_objective(sched, kind));
  return out;
}

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::JobRelease: return "release";
    case EventKind::BatchCompletion: return "completion";
    case EventKind::WakeUp: return "wakeup";
  }
  return "?";
}

json trace_json(const SimulationTrace& trace) {
  json steps = json::array();
  for (const TraceStep& step : trace.steps) {
    json events = json::array();
    for (const Event& ev : step.events) {
      json e{{"kind", event_kind_name(ev.kind)}};
      if (ev.kind == EventKind::JobRelease) e["job"] = ev.job;
      if (ev.kind == EventKind::BatchCompletion) {
        e["stage"] = ev.stage;
        e["machine"] = ev.machine;
      }
      if (ev.kind == EventKind::WakeUp) e["stage"] = ev.stage;
      events.push_back(std::move(e));
    }
    json starts = json::array();
    for (const BatchStart& bs : step.decision.starts)
      starts.push_back(json{{"stage", bs.stage},
                            {"machine", bs.machine},
                            {"jobs", bs.jobs}});
    json wakeups = json::array();
    for (const WakeUpRequest& w : step.decision.wakeups)
      wakeups.push_back(
          json{{"stage", w.stage}, {"time", qtime_to_json(w.time)}});
    steps.push_back(json{{"time", qtime_to_json(step.time)},
                         {"events", std::move(events)},
                         {"starts", std::move(starts)},
                         {"wakeups", std::move(wakeups)}});
  }
  return steps;
}

json composition_json(const BatchComposition& comp) {
  json out = json::array();
  for (const std::vector<int>& blocks : comp.blocks) out.push_back(blocks);
  return out;
}

// ratio columns: lowest-terms integers when the exact ratio is rational;
// otherwise the exact numerator and denominator values as canonical
// strings (the ratio itself then being their quotient in Q(sqrt 5)).
std::pair<std::string, std::string> ratio_cells(const QTime& value,
                                                const QTime& denom) {
  const QTime ratio = value / denom;
  if (ratio.is_rational())
    return {numerator(ratio.a).str(), denominator(ratio.a).str()};
  return {to_display_string(value), to_display_string(denom)};
}

int cmd_bound(const std::string& file, bool sung, bool simple, int simple_i,
              int simple_j) {
  const Instance inst = load_instance(file);
  const BoundMatrix matrix = lower_bound_matrix(inst);
  json rows = json::array();
  for (const std::vector<Rational>& row : matrix.entries) {
    json r = json::array();
    for (const Rational& v : row) r.push_back(rational_to_json(v));
    rows.push_back(std::move(r));
  }
  json out{{"matrix", std::move(rows)}};
  if (sung) out["sung"] = rational_to_json(sung_bound(inst));
  if (simple)
    out["simple"] = json{
        {"stage", simple_i},
        {"job", simple_j},
        {"value", rational_to_json(simple_lower_bound(inst, simple_i,
                                                      simple_j))}};
  emit(out);
  return 0;
}

int cmd_run(const std::string& file, const std::string& strategy_name,
            bool with_trace) {
  const Instance inst = load_instance(file);
  std::unique_ptr<Strategy> strategy = make_strategy(strategy_name);
  SimulationTrace trace = simulate(inst, *strategy);
  json out{{"strategy", strategy_name},
           {"schedule", schedule_to_json(trace.schedule)},
           {"objectives", objectives_json(trace.schedule)}};
  if (with_trace) out["trace"] = trace_json(trace);
  emit(out);
  return 0;
}

int cmd_oracle(const std::string& file, const std::string& objective,
               const OracleLimits& limits, bool all_orders) {
  const Instance inst = load_instance(file);
  const ObjectiveKind kind = objective_from_name(objective);
  if (all_orders) {
    const Rational value = optimal_value_all_orders(inst, kind, limits);
    emit(json{{"objective", objective},
              {"all_orders", true},
              {"value", rational_to_json(value)}});
    return 0;
  }
  if (inst.job_count() > limits.max_jobs &&
      inst.stage_count() == 1 && inst.stages[0].machines == 1) {
    emit(json{{"objective", objective},
              {"value", rational_to_json(oracle_optimum(inst, kind, limits))},
              {"method", "dynamic-program"}});
    return 0;
  }
  OracleResult result = optimal_permutation_schedule(inst, kind, limits);
  emit(json{{"objective", objective},
            {"value", rational_to_json(result.value)},
            {"composition", composition_json(result.composition)},
            {"schedule", schedule_to_json(result.schedule)},
            {"method", "brute-force"}});
  return 0;
}

int cmd_adversary(const std::string& family, const std::string& strategy_name,
                  int b1, const std::optional<Rational>& eps,
                  const Rational& alpha, int m1, const OracleLimits& limits) {
  std::unique_ptr<Strategy> strategy = make_strategy(strategy_name);
  json out{{"family", family}, {"strategy", strategy_name}};

  SimulationTrace trace;
  std::optional<Schedule> reference;
  if (family == "sumcj" || family == "sumfj") {
    std::unique_ptr<JobSource> source =
        family == "sumcj"
            ? adversary_sum_cj(b1, eps.value_or(default_adversary_eps(b1)))
            : adversary_sum_fj(b1, eps.value_or(default_adversary_eps(b1)));
    trace = run_adversary_game(*source, *strategy);
  } else if (family == "nw-tight" || family == "full-batch") {
    if (family == "full-batch" && !is_integer(alpha))
      throw Error("adversary: --alpha must be an integer for full-batch");
    WitnessFamily witness =
        family == "nw-tight"
            ? never_wait_tightness_instance(alpha, m1)
            : full_batch_family(numerator(alpha).convert_to<int>());
    trace = simulate(witness.instance, *strategy);
    reference = std::move(witness.reference);
  } else {
    throw Error("adversary: unknown family \"" + family +
                "\" (expected sumcj, sumfj, nw-tight, or full-batch)");
  }

  out["instance"] = instance_to_json(trace.schedule.instance);
  out["trace"] = trace_json(trace);
  out["objectives"] = objectives_json(trace.schedule);
  json oracle_values, oracle_ratios;
  for (ObjectiveKind kind : all_objectives()) {
    const char* name = objective_name(kind);
    try {
      const Rational opt = oracle_optimum(trace.schedule.instance, kind,
                                          limits);
      oracle_values[name] = rational_to_json(opt);
      oracle_ratios[name] = qtime_to_json(
          evaluate_objective(trace.schedule, kind) / QTime(opt));
    } catch (const SizeCapError&) {
      oracle_values[name] = nullptr;
      oracle_ratios[name] = nullptr;
    }
  }
  out["oracle"] = std::move(oracle_values);
  out["ratio_vs_oracle"] = std::move(oracle_ratios);
  if (reference) {
    out["reference"] = schedule_to_json(*reference);
    out["reference_objectives"] = objectives_json(*reference);
    json ratios;
    for (ObjectiveKind kind : all_objectives())
      ratios[objective_name(kind)] = qtime_to_json(
          evaluate_objective(trace.schedule, kind) /
          evaluate_objective(*reference, kind));
    out["ratio_vs_reference"] = std::move(ratios);
  }
  emit(out);
  return 0;
}

int cmd_compare(const std::string& file,
                const std::vector<std::string>& strategies,
                const std::string& objective, bool bound_only, bool as_json,
                const OracleLimits& limits) {
  const Instance inst = load_instance(file);
  const ObjectiveKind kind = objective_from_name(objective);
  QTime denom;
  if (bound_only)
    denom = QTime(objective_floor(inst, lower_bound_matrix(inst), kind));
  else
    denom = QTime(oracle_optimum(inst, kind, limits));

  json rows = json::array();
  std::ostringstream csv;
  csv << "strategy,objective,value_a,value_b,ratio_num,ratio_den\n";
  for (const std::string& name : strategies) {
    std::unique_ptr<Strategy> strategy = make_strategy(name);
    SimulationTrace trace = simulate(inst, *strategy);
    const QTime value = evaluate_objective(trace.schedule, kind);
    const auto [num, den] = ratio_cells(value, denom);
    csv << name << "," << objective << "," << to_fraction_string(value.a)
        << "," << to_fraction_string(value.b) << "," << num << "," << den
        << "\n";
    rows.push_back(json{{"strategy", name},
                        {"objective", objective},
                        {"value", qtime_to_json(value)},
                        {"baseline", qtime_to_json(denom)},
                        {"ratio", qtime_to_json(value / denom)}});
  }
  if (as_json)
    emit(json{{"baseline", bound_only ? "bound" : "oracle"},
              {"rows", std::move(rows)}});
  else
    std::cout << csv.str();
  return 0;
}

int cmd_gantt(const std::string& instance_file,
              const std::string& schedule_file, const std::string& format) {
  const Instance inst = load_instance(instance_file);
  const Schedule sched = load_schedule(schedule_file, inst);
  if (ScheduleCheck check = validate_schedule(sched); !check)
    throw Error(schedule_file + ": " + check.message);
  if (format == "ascii")
    std::cout << ascii_gantt(sched);
  else if (format == "svg")
    std::cout << svg_gantt(sched);
  else
    throw Error("gantt: unknown format \"" + format +
                "\" (expected ascii or svg)");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for proportionate flexible flow shops of "
               "batching machines"};
  app.require_subcommand(1);

  OracleLimits limits;
  try {
    limits = OracleLimits::from_env();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  int cap_override = -1;

  std::string file, strategy_name = "never-wait", objective = "cmax";
  std::string family, format = "ascii", schedule_file;
  std::vector<std::string> strategies;
  bool with_trace = false, sung = false, all_orders = false;
  bool bound_only = false, as_json = false;
  int b1 = 2, m1 = 1;
  std::vector<int> simple_args;
  std::string eps_text, alpha_text = "1";

  CLI::App* bound = app.add_subcommand(
      "bound", "Completion-time lower-bound matrix of an instance");
  bound->add_option("instance", file, "instance JSON file")->required();
  bound->add_flag("--sung", sung,
                  "also print the counting bound for zero-release "
                  "single-machine-per-stage instances");
  bound->add_option("--simple", simple_args,
                    "also print the per-entry counting bound for the given "
                    "0-based STAGE JOB")
      ->expected(2);

  CLI::App* run = app.add_subcommand(
      "run", "Simulate an online strategy on an instance");
  run->add_option("instance", file, "instance JSON file")->required();
  run->add_option("--strategy", strategy_name,
                  "never-wait, full-batch, or t-switch");
  run->add_flag("--trace", with_trace, "include the event/decision trace");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exact offline optimum by exhaustive enumeration");
  oracle->add_option("instance", file, "instance JSON file")->required();
  oracle->add_option("--objective", objective, "cmax, sumc, fmax, or sumf");
  oracle->add_option("--cap", cap_override, "override the job-count cap");
  oracle->add_flag("--all-orders", all_orders,
                   "search all job orders, not just release order");

  CLI::App* adversary = app.add_subcommand(
      "adversary", "Run an adversarial construction against a strategy");
  adversary->add_option("--family", family,
                        "sumcj, sumfj, nw-tight, or full-batch")
      ->required();
  adversary->add_option("--strategy", strategy_name,
                        "never-wait, full-batch, or t-switch");
  adversary->add_option("--b1", b1, "batch capacity (sumcj/sumfj)");
  adversary->add_option("--eps", eps_text,
                        "reaction delay as num/den (sumcj/sumfj)");
  adversary->add_option("--alpha", alpha_text,
                        "family parameter (nw-tight: rational; full-batch: "
                        "integer)");
  adversary->add_option("--m1", m1, "machine count (nw-tight)");
  adversary->add_option("--cap", cap_override, "override the job-count cap");

  CLI::App* compare = app.add_subcommand(
      "compare", "Tabulate strategies against the oracle or the bound");
  compare->add_option("instance", file, "instance JSON file")->required();
  compare->add_option("--strategy", strategies, "strategy (repeatable)")
      ->required();
  compare->add_option("--objective", objective, "cmax, sumc, fmax, or sumf");
  compare->add_flag("--bound-only", bound_only,
                    "compare against the lower-bound floor instead of the "
                    "oracle");
  compare->add_flag("--json", as_json, "emit JSON instead of CSV");
  compare->add_option("--cap", cap_override, "override the job-count cap");

  CLI::App* gantt = app.add_subcommand(
      "gantt", "Render a schedule as a job-oriented chart");
  gantt->add_option("instance", file, "instance JSON file")->required();
  gantt->add_option("schedule", schedule_file, "schedule JSON file")
      ->required();
  gantt->add_option("--format", format, "ascii or svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (cap_override > 0) limits.max_jobs = cap_override;

  try {
    if (bound->parsed())
      return cmd_bound(file, sung, !simple_args.empty(),
                       simple_args.empty() ? 0 : simple_args[0],
                       simple_args.empty() ? 0 : simple_args[1]);
    if (run->parsed()) return cmd_run(file, strategy_name, with_trace);
    if (oracle->parsed())
      return cmd_oracle(file, objective, limits, all_orders);
    if (adversary->parsed()) {
      std::optional<Rational> eps;
      if (!eps_text.empty()) eps = parse_rational(eps_text);
      return cmd_adversary(family, strategy_name, b1, eps,
                           parse_rational(alpha_text), m1, limits);
    }
    if (compare->parsed())
      return cmd_compare(file, strategies, objective, bound_only, as_json,
                         limits);
    if (gantt->parsed()) return cmd_gantt(file, schedule_file, format);
  } catch (const SizeCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
