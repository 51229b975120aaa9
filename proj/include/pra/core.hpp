// Domain model for patient-to-room assignment: wards, patients, instances,
// assignments, the two objectives and the feasibility-condition checker.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pra {

enum class Sex { Female, Male };

inline char sex_char(Sex s) { return s == Sex::Female ? 'F' : 'M'; }

struct RoomSpec {
  std::string id;
  int capacity = 0;  // beds, >= 1
};

struct Ward {
  std::vector<RoomSpec> rooms;

  // Number of rooms per capacity value.
  std::map<int, int> capacity_histogram() const {
    std::map<int, int> h;
    for (const auto& r : rooms) h[r.capacity]++;
    return h;
  }

  int total_capacity() const {
    int c = 0;
    for (const auto& r : rooms) c += r.capacity;
    return c;
  }
};

struct Patient {
  std::string id;
  Sex sex = Sex::Female;
  int registration = 0;  // period the stay became known, <= arrival
  int arrival = 0;       // 0 = carried over from before the horizon
  int discharge = 1;     // exclusive: no room needed in the discharge period
  bool is_private = false;
};

// Per-period patient counts plus the ward's room-capacity histogram.
struct Census {
  int females = 0;
  int males = 0;
  int private_females = 0;
  int private_males = 0;
  std::map<int, int> room_histogram;

  int total() const { return females + males; }
  int total_private() const { return private_females + private_males; }
  int n_rooms() const {
    int n = 0;
    for (const auto& [cap, cnt] : room_histogram) n += cnt;
    return n;
  }
  int total_capacity() const {
    int c = 0;
    for (const auto& [cap, cnt] : room_histogram) c += cap * cnt;
    return c;
  }
};

struct Instance {
  Ward ward;
  int horizon = 1;  // periods are 1..horizon
  std::vector<Patient> patients;
  // (patient id, room id) fixes for carried-over patients (the set F).
  std::vector<std::pair<std::string, std::string>> pre_assignments;
  // Unordered pairs of patients who must not share a room.
  std::vector<std::pair<std::string, std::string>> conflicts;

  int room_index(const std::string& id) const {
    for (size_t i = 0; i < ward.rooms.size(); ++i)
      if (ward.rooms[i].id == id) return static_cast<int>(i);
    return -1;
  }

  int patient_index(const std::string& id) const {
    for (size_t i = 0; i < patients.size(); ++i)
      if (patients[i].id == id) return static_cast<int>(i);
    return -1;
  }

  // First in-horizon period of a stay; arrival 0 means present from t=1.
  int first_period(const Patient& p) const { return std::max(p.arrival, 1); }

  // One past the last in-horizon period; discharges beyond the horizon are
  // truncated to horizon+1.
  int end_period(const Patient& p) const {
    return std::min(p.discharge, horizon + 1);
  }

  bool present(const Patient& p, int t) const {
    return p.arrival <= t && t < p.discharge;
  }

  // Pre-assigned room index per patient index, -1 if none.
  std::vector<int> pre_assigned_room() const {
    std::vector<int> fix(patients.size(), -1);
    for (const auto& [pid, rid] : pre_assignments) {
      int p = patient_index(pid);
      int r = room_index(rid);
      if (p >= 0 && r >= 0) fix[p] = r;
    }
    return fix;
  }
};

// Realization of the assignment function z(p,t).
struct Assignment {
  // (patient id, period) -> room id
  std::map<std::pair<std::string, int>, std::string> entries;

  const std::string* room_of(const std::string& patient, int t) const {
    auto it = entries.find({patient, t});
    return it == entries.end() ? nullptr : &it->second;
  }

  void set(const std::string& patient, int t, const std::string& room) {
    entries[{patient, t}] = room;
  }
};

enum class ViolationKind {
  CapacityExceeded,
  SexMixed,
  MissingAssignment,
  ExtraneousAssignment,
  UnknownRoom,
  ConflictViolated,
};

struct Violation {
  ViolationKind kind;
  int period = 0;
  std::string room;     // empty where not applicable
  std::string patient;  // first patient involved
  std::string other;    // second patient (conflicts)
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline void require_period(const Instance& inst, int t) {
  if (t < 1 || t > inst.horizon)
    throw std::out_of_range("period " + std::to_string(t) +
                            " outside 1.." + std::to_string(inst.horizon));
}

}  // namespace detail

// P(t): ids of patients needing a room in period t, in instance order.
inline std::vector<std::string> patients_present(const Instance& inst, int t) {
  detail::require_period(inst, t);
  std::vector<std::string> ids;
  for (const auto& p : inst.patients)
    if (inst.present(p, t)) ids.push_back(p.id);
  return ids;
}

inline Census census(const Instance& inst, int t) {
  detail::require_period(inst, t);
  Census c;
  c.room_histogram = inst.ward.capacity_histogram();
  for (const auto& p : inst.patients) {
    if (!inst.present(p, t)) continue;
    if (p.sex == Sex::Female) {
      c.females++;
      if (p.is_private) c.private_females++;
    } else {
      c.males++;
      if (p.is_private) c.private_males++;
    }
  }
  return c;
}

// Checks conditions (C) and (S), domain completeness and conflict pairs.
// Findings are data, not errors; ordering is deterministic (t, room, kind).
inline ValidationReport validate_assignment(const Instance& inst,
                                            const Assignment& a) {
  ValidationReport report;
  auto& out = report.violations;

  // Required domain: (p,t) for max(arr,1) <= t < min(dis, T+1).
  std::set<std::pair<std::string, int>> required;
  for (const auto& p : inst.patients)
    for (int t = inst.first_period(p); t < inst.end_period(p); ++t)
      required.insert({p.id, t});

  for (const auto& key : required)
    if (!a.entries.count(key))
      out.push_back({ViolationKind::MissingAssignment, key.second, "",
                     key.first, ""});

  // occupancy[(room,t)] -> patient ids, built from in-domain entries only.
  std::map<std::pair<int, int>, std::vector<int>> occupancy;
  for (const auto& [key, rid] : a.entries) {
    const auto& [pid, t] = key;
    if (!required.count(key)) {
      out.push_back({ViolationKind::ExtraneousAssignment, t, rid, pid, ""});
      continue;
    }
    int r = inst.room_index(rid);
    if (r < 0) {
      out.push_back({ViolationKind::UnknownRoom, t, rid, pid, ""});
      continue;
    }
    occupancy[{r, t}].push_back(inst.patient_index(pid));
  }

  for (const auto& [key, occupants] : occupancy) {
    const auto& [r, t] = key;
    const RoomSpec& room = inst.ward.rooms[r];
    if (static_cast<int>(occupants.size()) > room.capacity)
      out.push_back({ViolationKind::CapacityExceeded, t, room.id,
                     inst.patients[occupants.front()].id, ""});
    bool has_f = false, has_m = false;
    for (int p : occupants)
      (inst.patients[p].sex == Sex::Female ? has_f : has_m) = true;
    if (has_f && has_m)
      out.push_back({ViolationKind::SexMixed, t, room.id,
                     inst.patients[occupants.front()].id, ""});
  }

  for (const auto& [pid, qid] : inst.conflicts) {
    int p = inst.patient_index(pid), q = inst.patient_index(qid);
    if (p < 0 || q < 0) continue;
    const Patient& pp = inst.patients[p];
    const Patient& qq = inst.patients[q];
    int lo = std::max(inst.first_period(pp), inst.first_period(qq));
    int hi = std::min(inst.end_period(pp), inst.end_period(qq));
    for (int t = lo; t < hi; ++t) {
      const std::string* rp = a.room_of(pid, t);
      const std::string* rq = a.room_of(qid, t);
      if (rp && rq && *rp == *rq)
        out.push_back({ViolationKind::ConflictViolated, t, *rp, pid, qid});
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Violation& a, const Violation& b) {
                     if (a.period != b.period) return a.period < b.period;
                     if (a.room != b.room) return a.room < b.room;
                     if (a.kind != b.kind) return a.kind < b.kind;
                     if (a.patient != b.patient) return a.patient < b.patient;
                     return a.other < b.other;
                   });
  return report;
}

namespace detail {

inline void require_complete(const Instance& inst, const Assignment& a) {
  for (const auto& p : inst.patients)
    for (int t = inst.first_period(p); t < inst.end_period(p); ++t)
      if (!a.room_of(p.id, t))
        throw std::invalid_argument("incomplete assignment: patient " + p.id +
                                    " has no room in period " +
                                    std::to_string(t));
}

}  // namespace detail

// f_trans: room changes between consecutive stay periods plus pre-assigned
// patients whose period-1 room differs from their fix.
inline int count_transfers(const Instance& inst, const Assignment& a) {
  detail::require_complete(inst, a);
  int transfers = 0;
  for (const auto& p : inst.patients) {
    int first = inst.first_period(p);
    int end = inst.end_period(p);
    for (int t = first; t + 1 < end; ++t)
      if (*a.room_of(p.id, t) != *a.room_of(p.id, t + 1)) transfers++;
  }
  for (const auto& [pid, rid] : inst.pre_assignments) {
    const Patient& p = inst.patients[inst.patient_index(pid)];
    if (!inst.present(p, 1)) continue;
    if (*a.room_of(pid, 1) != rid) transfers++;
  }
  return transfers;
}

// f_priv: periods in which a private patient is the sole occupant of a room.
inline int count_private_single_days(const Instance& inst,
                                     const Assignment& a) {
  detail::require_complete(inst, a);
  std::map<std::pair<std::string, int>, int> occupants;
  for (const auto& [key, rid] : a.entries) occupants[{rid, key.second}]++;
  int days = 0;
  for (const auto& p : inst.patients) {
    if (!p.is_private) continue;
    for (int t = inst.first_period(p); t < inst.end_period(p); ++t)
      if (occupants[{*a.room_of(p.id, t), t}] == 1) days++;
  }
  return days;
}

}  // namespace pra
