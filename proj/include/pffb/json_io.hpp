#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pffb/core.hpp"

namespace pffb {

using nlohmann::json;

// Serialization contract
// ----------------------
// Instance:
//   {"stages": [{"machines": int, "batch_capacity": int,
//                "processing_time": "num/den"}, ...],
//    "releases": ["num/den", ...]}
// Schedule (instance travels separately):
//   {"batches": [{"stage": int, "machine": int,
//                 "start": {"a": "num/den", "b": "num/den"},
//                 "jobs": [int, ...]}, ...]}
// All indices are 0-based.  Rationals are emitted in lowest terms with an
// explicit denominator; parsing also accepts bare integers like "3".
// Emission is canonical (sorted keys, canonical batch order, lowest terms),
// so parse -> serialize of canonical text is byte-identical.

inline json rational_to_json(const Rational& r) {
  return json(to_fraction_string(r));
}

inline Rational rational_from_json(const json& j, const std::string& where) {
  if (!j.is_string())
    throw Error(where + ": expected a \"num/den\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error&) {
    throw Error(where + ": cannot parse rational \"" +
                j.get<std::string>() + "\"");
  }
}

inline json qtime_to_json(const QTime& t) {
  return json{{"a", rational_to_json(t.a)}, {"b", rational_to_json(t.b)}};
}

inline QTime qtime_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b"))
    throw Error(where + ": expected an object with fields \"a\" and \"b\"");
  return QTime(rational_from_json(j.at("a"), where + ".a"),
               rational_from_json(j.at("b"), where + ".b"));
}

inline int int_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw Error(where + ": expected an integer");
  return j.get<int>();
}

inline json instance_to_json(const Instance& inst) {
  json stages = json::array();
  for (const StageConfig& st : inst.stages)
    stages.push_back(json{{"machines", st.machines},
                          {"batch_capacity", st.batch_capacity},
                          {"processing_time",
                           rational_to_json(st.processing_time)}});
  json releases = json::array();
  for (const Rational& r : inst.releases)
    releases.push_back(rational_to_json(r));
  return json{{"stages", stages}, {"releases", releases}};
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("stages") || !j.contains("releases"))
    throw Error("instance: expected an object with \"stages\" and \"releases\"");
  if (!j.at("stages").is_array() || !j.at("releases").is_array())
    throw Error("instance: \"stages\" and \"releases\" must be arrays");
  Instance inst;
  int i = 0;
  for (const json& js : j.at("stages")) {
    const std::string where = "instance.stages[" + std::to_string(i++) + "]";
    if (!js.is_object())
      throw Error(where + ": expected an object");
    StageConfig st;
    st.machines = int_from_json(js.value("machines", json(1)),
                                where + ".machines");
    st.batch_capacity = int_from_json(js.value("batch_capacity", json(1)),
                                      where + ".batch_capacity");
    if (!js.contains("processing_time"))
      throw Error(where + ": missing \"processing_time\"");
    st.processing_time = rational_from_json(js.at("processing_time"),
                                            where + ".processing_time");
    inst.stages.push_back(std::move(st));
  }
  int jdx = 0;
  for (const json& jr : j.at("releases"))
    inst.releases.push_back(rational_from_json(
        jr, "instance.releases[" + std::to_string(jdx++) + "]"));
  return inst;
}

inline json schedule_to_json(const Schedule& sched) {
  std::vector<BatchAssignment> batches = sched.batches;
  sort_batches_canonically(batches);
  json out = json::array();
  for (const BatchAssignment& batch : batches)
    out.push_back(json{{"stage", batch.stage},
                       {"machine", batch.machine},
                       {"start", qtime_to_json(batch.start)},
                       {"jobs", batch.jobs}});
  return json{{"batches", out}};
}

inline Schedule schedule_from_json(const json& j, Instance instance) {
  if (!j.is_object() || !j.contains("batches") || !j.at("batches").is_array())
    throw Error("schedule: expected an object with a \"batches\" array");
  Schedule sched;
  sched.instance = std::move(instance);
  int k = 0;
  for (const json& jb : j.at("batches")) {
    const std::string where = "schedule.batches[" + std::to_string(k++) + "]";
    if (!jb.is_object())
      throw Error(where + ": expected an object");
    if (!jb.contains("stage") || !jb.contains("machine"))
      throw Error(where + ": missing \"stage\" or \"machine\"");
    BatchAssignment batch;
    batch.stage = int_from_json(jb.at("stage"), where + ".stage");
    batch.machine = int_from_json(jb.at("machine"), where + ".machine");
    if (!jb.contains("start"))
      throw Error(where + ": missing \"start\"");
    batch.start = qtime_from_json(jb.at("start"), where + ".start");
    if (!jb.contains("jobs") || !jb.at("jobs").is_array())
      throw Error(where + ": missing \"jobs\" array");
    for (const json& jj : jb.at("jobs"))
      batch.jobs.push_back(int_from_json(jj, where + ".jobs[]"));
    sched.batches.push_back(std::move(batch));
  }
  return sched;
}

// Canonical text form used everywhere output must be byte-stable.
inline std::string dump_canonical(const json& j) { return j.dump(); }

}  // namespace pffb
