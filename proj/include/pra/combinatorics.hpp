// Closed-form feasibility tests for single periods, the constructive room
// split, an exact subset-sum feasibility oracle, the single-room bound
// s^max_t with its fractional counterpart, and exhaustive oracles for tiny
// instances.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "pra/core.hpp"

namespace pra {

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

enum class FeasibilityMethod { DoubleOnly, SingleAndC, EvenTwoTwoC, GeneralDP };

inline const char* feasibility_method_name(FeasibilityMethod m) {
  switch (m) {
    case FeasibilityMethod::DoubleOnly: return "uniform";
    case FeasibilityMethod::SingleAndC: return "single+c";
    case FeasibilityMethod::EvenTwoTwoC: return "even";
    case FeasibilityMethod::GeneralDP: return "subset-sum";
  }
  return "?";
}

struct FeasibilityVerdict {
  bool feasible = false;
  FeasibilityMethod method = FeasibilityMethod::GeneralDP;
  // Indices (into the capacity list the check ran on) of the rooms reserved
  // for female patients; the complement hosts the males.
  std::optional<std::vector<size_t>> witness;
};

// Wards of double rooms only: ceil(F/2) + ceil(M/2) <= |R|.
inline bool feasible_double(int females, int males, int n_rooms) {
  return ceil_div(females, 2) + ceil_div(males, 2) <= n_rooms;
}

// Uniform capacity c generalization of the double-room condition.
inline bool feasible_uniform(int females, int males, int n_rooms, int c) {
  return ceil_div(females, c) + ceil_div(males, c) <= n_rooms;
}

// Capacities {1,c} with at least c-1 single rooms: feasible iff the total
// capacity suffices. Callers must fall back to the subset-sum oracle when
// the single-room condition fails; the bound is tight.
inline bool feasible_single_and_c(int females, int males, int r1, int rc,
                                  int c) {
  if (c < 1) throw std::invalid_argument("capacity c must be >= 1");
  if (r1 < c - 1)
    throw std::invalid_argument(
        "single+c lemma needs R1 >= c-1 (R1=" + std::to_string(r1) +
        ", c=" + std::to_string(c) + ")");
  return females + males <= r1 + c * rc;
}

// Capacities {2,2c}, c >= 2, with at least c-1 double rooms: feasible iff
// both counts are even and fit, or the ward is not completely full.
inline bool feasible_even(int females, int males, int r2, int r2c, int c) {
  if (c < 2) throw std::invalid_argument("even-capacity lemma needs c >= 2");
  if (r2 < c - 1)
    throw std::invalid_argument(
        "even-capacity lemma needs R2 >= c-1 (R2=" + std::to_string(r2) +
        ", c=" + std::to_string(c) + ")");
  int total = 2 * r2 + 2 * c * r2c;
  if (females + males < total) return true;
  return females % 2 == 0 && males % 2 == 0 && females + males <= total;
}

// Exact pseudo-polynomial oracle: is there a subset S of rooms with
// sum_S c_r >= F and sum_{R\S} c_r >= M? Witness reconstructed on success.
inline FeasibilityVerdict feasible_general(int females, int males,
                                           const std::vector<int>& capacities) {
  FeasibilityVerdict v;
  v.method = FeasibilityMethod::GeneralDP;
  int total = 0;
  for (int c : capacities) total += c;
  if (females + males > total) return v;

  size_t n = capacities.size();
  // reach[i][s]: subset of the first i rooms sums to s.
  std::vector<std::vector<char>> reach(n + 1,
                                       std::vector<char>(total + 1, 0));
  reach[0][0] = 1;
  for (size_t i = 0; i < n; ++i)
    for (int s = 0; s <= total; ++s)
      if (reach[i][s]) {
        reach[i + 1][s] = 1;
        if (s + capacities[i] <= total) reach[i + 1][s + capacities[i]] = 1;
      }

  for (int s = females; s <= total - males; ++s) {
    if (s < 0 || !reach[n][s]) continue;
    std::vector<size_t> chosen;
    int left = s;
    for (size_t i = n; i > 0; --i) {
      if (reach[i - 1][left]) continue;  // room i-1 not needed
      chosen.push_back(i - 1);
      left -= capacities[i - 1];
    }
    std::reverse(chosen.begin(), chosen.end());
    v.feasible = true;
    v.witness = std::move(chosen);
    return v;
  }
  return v;
}

// Capacity list of a census in canonical (ascending) order.
inline std::vector<int> census_capacities(const Census& c) {
  std::vector<int> caps;
  for (const auto& [cap, cnt] : c.room_histogram)
    caps.insert(caps.end(), cnt, cap);
  return caps;
}

// Umbrella single-period feasibility check: cheapest applicable closed form
// first, exact subset-sum fallback.
inline FeasibilityVerdict check_feasible(const Census& census) {
  const auto& hist = census.room_histogram;
  int f = census.females, m = census.males;

  std::vector<int> distinct;
  for (const auto& [cap, cnt] : hist)
    if (cnt > 0) distinct.push_back(cap);

  if (distinct.size() <= 1) {
    int c = distinct.empty() ? 1 : distinct.front();
    int n = distinct.empty() ? 0 : hist.at(c);
    FeasibilityVerdict v;
    v.method = FeasibilityMethod::DoubleOnly;
    v.feasible = feasible_uniform(f, m, n, c);
    if (v.feasible) {
      std::vector<size_t> w(ceil_div(f, c));
      for (size_t i = 0; i < w.size(); ++i) w[i] = i;
      v.witness = std::move(w);
    }
    return v;
  }
  if (distinct.size() == 2 && distinct[0] == 1) {
    int c = distinct[1];
    int r1 = hist.at(1);
    if (r1 >= c - 1) {
      FeasibilityVerdict v;
      v.method = FeasibilityMethod::SingleAndC;
      v.feasible = feasible_single_and_c(f, m, r1, hist.at(c), c);
      return v;
    }
  }
  if (distinct.size() == 2 && distinct[0] == 2 && distinct[1] % 2 == 0) {
    int c = distinct[1] / 2;
    int r2 = hist.at(2);
    if (c >= 2 && r2 >= c - 1) {
      FeasibilityVerdict v;
      v.method = FeasibilityMethod::EvenTwoTwoC;
      v.feasible = feasible_even(f, m, r2, hist.at(distinct[1]), c);
      return v;
    }
  }
  return feasible_general(f, m, census_capacities(census));
}

// Room split for wards with capacities {1,c}, following the constructive
// proof: fill k = min(floor(F/c), Rc) rooms of capacity c with females, then
// either place the leftovers in single rooms or take one extra c-room.
// Returns (rooms for females, rooms for males) as id lists.
inline std::pair<std::vector<std::string>, std::vector<std::string>>
construct_room_split(const Ward& ward, int females, int males) {
  std::vector<std::string> singles, bigs;
  int c = 1;
  for (const auto& r : ward.rooms) {
    if (r.capacity == 1) {
      singles.push_back(r.id);
    } else {
      if (c != 1 && r.capacity != c)
        throw std::invalid_argument("room split requires capacities {1,c}");
      c = r.capacity;
      bigs.push_back(r.id);
    }
  }
  int r1 = static_cast<int>(singles.size());
  int rc = static_cast<int>(bigs.size());
  if (!feasible_single_and_c(females, males, r1, rc, c))
    throw std::domain_error("census infeasible, no room split exists");

  std::vector<std::string> s_side, rest;
  auto take = [&](std::vector<std::string>& pool, int n) {
    for (int i = 0; i < n; ++i) s_side.push_back(pool[i]);
    for (size_t i = n; i < pool.size(); ++i) rest.push_back(pool[i]);
  };
  if (females == 0) {
    take(bigs, 0);
    take(singles, 0);
    return {s_side, rest};
  }
  if (c == 1) {  // all rooms single
    take(singles, females);
    return {s_side, rest};
  }
  int k = std::min(females / c, rc);
  int ell = std::min(males / c, rc - k);
  if (r1 >= (females - c * k) + (males - c * ell)) {
    take(bigs, k);
    take(singles, females - c * k);
  } else {
    take(bigs, k + 1);
    take(singles, 0);
  }
  return {s_side, rest};
}

// --- Private Patient Problem -----------------------------------------------

struct PppBound {
  int alpha = 0;
  int beta_f = 0;
  int beta_m = 0;
  int gamma = 0;       // 2*alpha + beta_f + beta_m
  int s_max = 0;       // exact maximum of solo private patients
  int s_max_frac = 0;  // LP-relaxation bound (sex separation ignored)
};

// Fractional bound: min(|P*|, 2|R| - |P|), never negative.
inline int s_max_frac_period(const Census& c) {
  for (const auto& [cap, cnt] : c.room_histogram)
    if (cnt > 0 && cap > 2)
      throw std::invalid_argument("fractional bound needs capacities in {1,2}");
  return std::max(0, std::min(c.total_private(),
                              2 * c.n_rooms() - c.total()));
}

// Exact s^max_t for feasible censuses with capacities in {1,2}; single rooms
// are treated as double rooms, which leaves the optimum unchanged.
inline PppBound s_max_period(const Census& c) {
  for (const auto& [cap, cnt] : c.room_histogram)
    if (cnt > 0 && cap > 2)
      throw std::invalid_argument("s_max formula needs capacities in {1,2}");
  if (!check_feasible(c).feasible)
    throw std::domain_error("s_max undefined for infeasible census");

  int n_priv = c.total_private();
  PppBound b;
  b.alpha = c.n_rooms() - ceil_div(c.females - c.private_females, 2) -
            ceil_div(c.males - c.private_males, 2);
  b.beta_f = std::min((c.females - c.private_females) % 2,
                      std::min(c.private_females, 1));
  b.beta_m = std::min((c.males - c.private_males) % 2,
                      std::min(c.private_males, 1));
  b.gamma = 2 * b.alpha + b.beta_f + b.beta_m;
  if (b.alpha < 0)
    throw std::logic_error("negative alpha on a feasible census");

  if (b.alpha >= n_priv)
    b.s_max = n_priv;
  else if (b.alpha == n_priv - 1 && b.beta_f == 1 && b.beta_m == 1)
    b.s_max = n_priv - 1;
  else
    b.s_max = b.gamma - n_priv;
  if (b.s_max < 0)
    throw std::logic_error("negative s_max on a feasible census");

  b.s_max_frac = s_max_frac_period(c);
  return b;
}

// Exact PPP value by sparse reachability over room dispositions. Each room
// is unused, filled with regular females/males, or holds one solo private
// patient. Returns nullopt when no feasible disposition exists.
inline std::optional<int> ppp_bruteforce(const Census& c, int max_rooms = 12) {
  std::vector<int> caps = census_capacities(c);
  if (static_cast<int>(caps.size()) > max_rooms)
    throw std::invalid_argument("ward too large for ppp_bruteforce (" +
                                std::to_string(caps.size()) + " rooms > " +
                                std::to_string(max_rooms) + ")");
  int f = c.females, m = c.males;
  int fp = c.private_females, mp = c.private_males;

  // State: capacity reserved for females (clamped at F), for males (clamped
  // at M), solo female rooms, solo male rooms.
  auto pack = [](int a, int b, int x, int y) {
    return (static_cast<uint64_t>(a) << 48) | (static_cast<uint64_t>(b) << 32) |
           (static_cast<uint64_t>(x) << 16) | static_cast<uint64_t>(y);
  };
  std::unordered_set<uint64_t> states = {pack(0, 0, 0, 0)};
  for (int cap : caps) {
    std::unordered_set<uint64_t> next;
    for (uint64_t s : states) {
      int a = static_cast<int>(s >> 48);
      int b = static_cast<int>((s >> 32) & 0xffff);
      int x = static_cast<int>((s >> 16) & 0xffff);
      int y = static_cast<int>(s & 0xffff);
      next.insert(s);
      next.insert(pack(std::min(a + cap, f), b, x, y));
      next.insert(pack(a, std::min(b + cap, m), x, y));
      if (x < fp) next.insert(pack(a, b, x + 1, y));
      if (y < mp) next.insert(pack(a, b, x, y + 1));
    }
    states = std::move(next);
  }
  int best = -1;
  for (uint64_t s : states) {
    int a = static_cast<int>(s >> 48);
    int b = static_cast<int>((s >> 32) & 0xffff);
    int x = static_cast<int>((s >> 16) & 0xffff);
    int y = static_cast<int>(s & 0xffff);
    if (a + x >= f && b + y >= m) best = std::max(best, x + y);
  }
  if (best < 0) return std::nullopt;
  return best;
}

// s^max_t with automatic method choice: closed formula for {1,2} wards,
// exact enumeration for small wards of other capacities.
struct SMaxValue {
  int value = 0;
  bool exact = true;
  FeasibilityMethod feas_method = FeasibilityMethod::DoubleOnly;
  std::string method;  // "formula" or "bruteforce"
};

inline SMaxValue s_max_period_auto(const Census& c, int bruteforce_rooms = 12) {
  bool only_12 = true;
  for (const auto& [cap, cnt] : c.room_histogram)
    if (cnt > 0 && cap > 2) only_12 = false;
  SMaxValue out;
  if (only_12) {
    out.value = s_max_period(c).s_max;
    out.method = "formula";
    return out;
  }
  auto v = ppp_bruteforce(c, bruteforce_rooms);
  if (!v) throw std::domain_error("s_max undefined for infeasible census");
  out.value = *v;
  out.method = "bruteforce";
  return out;
}

// Upper bound (L) on f_priv: sum of per-period maxima over the horizon.
inline int s_max_total(const Instance& inst, int bruteforce_rooms = 12) {
  int total = 0;
  for (int t = 1; t <= inst.horizon; ++t)
    total += s_max_period_auto(census(inst, t), bruteforce_rooms).value;
  return total;
}

// --- Exhaustive PRA oracle ---------------------------------------------------

enum class Priority { TransfersFirst, PrivacyFirst };

struct ExhaustiveCaps {
  int max_patients = 6;
  int max_rooms = 3;
  int max_horizon = 4;
};

struct PraOptimum {
  int transfers = 0;
  int private_single_days = 0;
  Assignment assignment;
};

// Enumerates every complete assignment of a tiny instance, filters by the
// feasibility conditions and conflicts, and returns the lexicographic
// optimum under the given priority. Ties keep the first assignment found in
// enumeration order, which is deterministic.
inline std::optional<PraOptimum> exhaustive_pra(
    const Instance& inst, Priority priority, const ExhaustiveCaps& caps = {}) {
  int n_rooms = static_cast<int>(inst.ward.rooms.size());
  int n_pat = static_cast<int>(inst.patients.size());
  if (n_pat > caps.max_patients || n_rooms > caps.max_rooms ||
      inst.horizon > caps.max_horizon)
    throw std::invalid_argument("instance exceeds exhaustive_pra caps");

  struct Slot {
    int patient;
    int t;
    bool first_of_stay;
  };
  std::vector<Slot> slots;
  for (int p = 0; p < n_pat; ++p) {
    const Patient& pat = inst.patients[p];
    for (int t = inst.first_period(pat); t < inst.end_period(pat); ++t)
      slots.push_back({p, t, t == inst.first_period(pat)});
  }
  std::vector<int> prefix = inst.pre_assigned_room();
  std::vector<std::vector<int>> conflict_idx(n_pat);
  for (const auto& [pid, qid] : inst.conflicts) {
    int p = inst.patient_index(pid), q = inst.patient_index(qid);
    conflict_idx[p].push_back(q);
    conflict_idx[q].push_back(p);
  }

  int T = inst.horizon;
  std::vector<int> count(n_rooms * (T + 1), 0);
  std::vector<int> fcount(n_rooms * (T + 1), 0);
  std::vector<std::vector<int>> members(n_rooms * (T + 1));
  std::vector<int> choice(slots.size(), -1);
  auto cell = [&](int r, int t) { return r * (T + 1) + t; };

  std::optional<PraOptimum> best;
  int best_trans = std::numeric_limits<int>::max();
  int best_priv = -1;

  auto better = [&](int trans, int priv) {
    if (priority == Priority::TransfersFirst)
      return trans < best_trans || (trans == best_trans && priv > best_priv);
    return priv > best_priv || (priv == best_priv && trans < best_trans);
  };

  auto recurse = [&](auto&& self, size_t i, int trans) -> void {
    if (priority == Priority::TransfersFirst && best && trans > best_trans)
      return;
    if (i == slots.size()) {
      int priv = 0;
      for (int p = 0; p < n_pat; ++p) {
        if (!inst.patients[p].is_private) continue;
        const Patient& pat = inst.patients[p];
        for (int t = inst.first_period(pat); t < inst.end_period(pat); ++t) {
          size_t si = 0;
          while (slots[si].patient != p || slots[si].t != t) si++;
          if (count[cell(choice[si], t)] == 1) priv++;
        }
      }
      if (!best || better(trans, priv)) {
        best.emplace();
        best_trans = trans;
        best_priv = priv;
        best->transfers = trans;
        best->private_single_days = priv;
        best->assignment = Assignment{};
        for (size_t si = 0; si < slots.size(); ++si)
          best->assignment.set(inst.patients[slots[si].patient].id,
                               slots[si].t,
                               inst.ward.rooms[choice[si]].id);
      }
      return;
    }
    const Slot& slot = slots[i];
    const Patient& pat = inst.patients[slot.patient];
    for (int r = 0; r < n_rooms; ++r) {
      int idx = cell(r, slot.t);
      if (count[idx] >= inst.ward.rooms[r].capacity) continue;
      if (count[idx] > 0) {
        Sex roommate = inst.patients[members[idx].front()].sex;
        if (roommate != pat.sex) continue;
      }
      bool conflicted = false;
      for (int q : conflict_idx[slot.patient])
        for (int occ : members[idx])
          if (occ == q) conflicted = true;
      if (conflicted) continue;

      int extra = 0;
      if (slot.first_of_stay) {
        if (prefix[slot.patient] >= 0 && prefix[slot.patient] != r) extra = 1;
      } else if (choice[i - 1] != r) {
        extra = 1;  // slots of one patient are consecutive
      }
      count[idx]++;
      fcount[idx] += pat.sex == Sex::Female ? 1 : 0;
      members[idx].push_back(slot.patient);
      choice[i] = r;
      self(self, i + 1, trans + extra);
      members[idx].pop_back();
      fcount[idx] -= pat.sex == Sex::Female ? 1 : 0;
      count[idx]--;
      choice[i] = -1;
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

}  // namespace pra
