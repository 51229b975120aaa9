// JSON ingestion and emission for instances and assignments.
//
// Instance schema:
//   ward.rooms:      [{id, capacity >= 1}]
//   horizon:         int >= 1
//   patients:        [{id, sex "F"|"M", registration, arrival, discharge,
//                      private}]
//   pre_assignments: [{patient, room}]        (optional)
//   conflicts:       [[id, id]]               (optional)
// Assignment documents are lists of {patient, period, room} triples.
#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pra/core.hpp"

namespace pra {

// Malformed document or violated instance invariant; message carries the
// offending path or id.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

using nlohmann::json;

inline const json& member(const json& obj, const std::string& key,
                          const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key + ": missing");
  return *it;
}

inline int int_member(const json& obj, const std::string& key,
                      const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number_integer())
    throw SchemaError(path + "." + key + ": expected an integer");
  return v.get<int>();
}

inline std::string str_member(const json& obj, const std::string& key,
                              const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string())
    throw SchemaError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

}  // namespace detail

// Validates all Instance invariants; throws SchemaError on the first failure.
inline void check_instance(const Instance& inst) {
  if (inst.horizon < 1) throw SchemaError("horizon: must be >= 1");
  std::set<std::string> room_ids;
  for (const auto& r : inst.ward.rooms) {
    if (r.capacity < 1)
      throw SchemaError("room " + r.id + ": capacity must be >= 1");
    if (!room_ids.insert(r.id).second)
      throw SchemaError("room " + r.id + ": duplicate id");
  }
  std::set<std::string> patient_ids;
  for (const auto& p : inst.patients) {
    if (!patient_ids.insert(p.id).second)
      throw SchemaError("patient " + p.id + ": duplicate id");
    if (p.arrival < 0)
      throw SchemaError("patient " + p.id + ": arrival must be >= 0");
    if (p.discharge < 1)
      throw SchemaError("patient " + p.id + ": discharge must be >= 1");
    if (p.arrival >= p.discharge)
      throw SchemaError("patient " + p.id +
                        ": arrival must precede discharge (same-day stays "
                        "are dropped at the source)");
    if (p.registration < 0)
      throw SchemaError("patient " + p.id + ": registration must be >= 0");
    if (p.registration > p.arrival)
      throw SchemaError("patient " + p.id +
                        ": registration after arrival; clean the data to "
                        "registration = arrival before loading");
  }
  std::set<std::string> pre_assigned;
  for (const auto& [pid, rid] : inst.pre_assignments) {
    int p = inst.patient_index(pid);
    if (p < 0)
      throw SchemaError("pre_assignment: unknown patient " + pid);
    if (inst.room_index(rid) < 0)
      throw SchemaError("pre_assignment: unknown room " + rid);
    if (inst.patients[p].arrival != 0)
      throw SchemaError("pre_assignment: patient " + pid +
                        " has arrival != 0");
    if (!pre_assigned.insert(pid).second)
      throw SchemaError("pre_assignment: patient " + pid +
                        " assigned more than once");
  }
  for (const auto& [pid, qid] : inst.conflicts) {
    if (inst.patient_index(pid) < 0 || inst.patient_index(qid) < 0)
      throw SchemaError("conflict [" + pid + ", " + qid +
                        "]: unknown patient");
    if (pid == qid)
      throw SchemaError("conflict [" + pid + ", " + qid +
                        "]: patient paired with itself");
  }
}

inline Instance load_instance(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }

  Instance inst;
  const json& ward = detail::member(doc, "ward", "$");
  const json& rooms = detail::member(ward, "rooms", "$.ward");
  if (!rooms.is_array()) throw SchemaError("$.ward.rooms: expected a list");
  for (size_t i = 0; i < rooms.size(); ++i) {
    std::string path = "$.ward.rooms[" + std::to_string(i) + "]";
    inst.ward.rooms.push_back({detail::str_member(rooms[i], "id", path),
                               detail::int_member(rooms[i], "capacity", path)});
  }

  inst.horizon = detail::int_member(doc, "horizon", "$");

  const json& patients = detail::member(doc, "patients", "$");
  if (!patients.is_array()) throw SchemaError("$.patients: expected a list");
  for (size_t i = 0; i < patients.size(); ++i) {
    std::string path = "$.patients[" + std::to_string(i) + "]";
    Patient p;
    p.id = detail::str_member(patients[i], "id", path);
    std::string sex = detail::str_member(patients[i], "sex", path);
    if (sex == "F")
      p.sex = Sex::Female;
    else if (sex == "M")
      p.sex = Sex::Male;
    else
      throw SchemaError(path + ".sex: expected \"F\" or \"M\"");
    p.registration = detail::int_member(patients[i], "registration", path);
    p.arrival = detail::int_member(patients[i], "arrival", path);
    p.discharge = detail::int_member(patients[i], "discharge", path);
    const json& priv = detail::member(patients[i], "private", path);
    if (!priv.is_boolean())
      throw SchemaError(path + ".private: expected a boolean");
    p.is_private = priv.get<bool>();
    inst.patients.push_back(std::move(p));
  }

  if (doc.contains("pre_assignments")) {
    const json& fixes = doc["pre_assignments"];
    if (!fixes.is_array())
      throw SchemaError("$.pre_assignments: expected a list");
    for (size_t i = 0; i < fixes.size(); ++i) {
      std::string path = "$.pre_assignments[" + std::to_string(i) + "]";
      inst.pre_assignments.emplace_back(
          detail::str_member(fixes[i], "patient", path),
          detail::str_member(fixes[i], "room", path));
    }
  }
  if (doc.contains("conflicts")) {
    const json& pairs = doc["conflicts"];
    if (!pairs.is_array()) throw SchemaError("$.conflicts: expected a list");
    for (size_t i = 0; i < pairs.size(); ++i) {
      std::string path = "$.conflicts[" + std::to_string(i) + "]";
      if (!pairs[i].is_array() || pairs[i].size() != 2 ||
          !pairs[i][0].is_string() || !pairs[i][1].is_string())
        throw SchemaError(path + ": expected a pair of patient ids");
      inst.conflicts.emplace_back(pairs[i][0].get<std::string>(),
                                  pairs[i][1].get<std::string>());
    }
  }

  check_instance(inst);
  return inst;
}

inline Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

inline std::string instance_to_json(const Instance& inst) {
  using detail::json;
  json doc;
  doc["ward"]["rooms"] = json::array();
  for (const auto& r : inst.ward.rooms)
    doc["ward"]["rooms"].push_back({{"id", r.id}, {"capacity", r.capacity}});
  doc["horizon"] = inst.horizon;
  doc["patients"] = json::array();
  for (const auto& p : inst.patients)
    doc["patients"].push_back({{"id", p.id},
                               {"sex", std::string(1, sex_char(p.sex))},
                               {"registration", p.registration},
                               {"arrival", p.arrival},
                               {"discharge", p.discharge},
                               {"private", p.is_private}});
  doc["pre_assignments"] = json::array();
  for (const auto& [pid, rid] : inst.pre_assignments)
    doc["pre_assignments"].push_back({{"patient", pid}, {"room", rid}});
  doc["conflicts"] = json::array();
  for (const auto& [pid, qid] : inst.conflicts)
    doc["conflicts"].push_back({pid, qid});
  return doc.dump(2) + "\n";
}

inline Assignment load_assignment(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw SchemaError("$: expected a list of triples");
  Assignment a;
  for (size_t i = 0; i < doc.size(); ++i) {
    std::string path = "$[" + std::to_string(i) + "]";
    std::string patient = detail::str_member(doc[i], "patient", path);
    int period = detail::int_member(doc[i], "period", path);
    std::string room = detail::str_member(doc[i], "room", path);
    if (a.entries.count({patient, period}))
      throw SchemaError(path + ": duplicate entry for (" + patient + ", " +
                        std::to_string(period) + ")");
    a.set(patient, period, room);
  }
  return a;
}

inline std::string assignment_to_json(const Assignment& a) {
  using detail::json;
  json doc = json::array();
  for (const auto& [key, room] : a.entries)
    doc.push_back(
        {{"patient", key.first}, {"period", key.second}, {"room", room}});
  return doc.dump(2) + "\n";
}

}  // namespace pra
