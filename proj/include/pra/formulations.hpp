// Builders for the binary-program variants A-P, Ostar and Pstar, plus
// solution extraction and objective evaluation against a built model.
//
// Per-period variants (A-K) assign rooms per patient and period and count
// transfers; stay-level variants (M-Pstar) pin one room per stay. The
// letters G, J and L are intentionally unused.
#pragma once

#include <cctype>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pra/combinatorics.hpp"
#include "pra/core.hpp"
#include "pra/model.hpp"

namespace pra {

enum class VariantId { A, B, C, D, E, F, H, I, K, M, N, O, P, Ostar, Pstar };

struct Variant {
  VariantId id = VariantId::D;
  bool with_conflicts = false;
  bool with_objective_cuts = false;
};

inline const char* variant_name(VariantId id) {
  switch (id) {
    case VariantId::A: return "A";
    case VariantId::B: return "B";
    case VariantId::C: return "C";
    case VariantId::D: return "D";
    case VariantId::E: return "E";
    case VariantId::F: return "F";
    case VariantId::H: return "H";
    case VariantId::I: return "I";
    case VariantId::K: return "K";
    case VariantId::M: return "M";
    case VariantId::N: return "N";
    case VariantId::O: return "O";
    case VariantId::P: return "P";
    case VariantId::Ostar: return "Ostar";
    case VariantId::Pstar: return "Pstar";
  }
  return "?";
}

inline std::optional<VariantId> variant_from_name(const std::string& s) {
  static const std::pair<const char*, VariantId> table[] = {
      {"A", VariantId::A},         {"B", VariantId::B},
      {"C", VariantId::C},         {"D", VariantId::D},
      {"E", VariantId::E},         {"F", VariantId::F},
      {"H", VariantId::H},         {"I", VariantId::I},
      {"K", VariantId::K},         {"M", VariantId::M},
      {"N", VariantId::N},         {"O", VariantId::O},
      {"P", VariantId::P},         {"Ostar", VariantId::Ostar},
      {"Pstar", VariantId::Pstar},
  };
  for (const auto& [name, id] : table)
    if (s == name) return id;
  return std::nullopt;
}

inline bool is_stay_level(VariantId id) { return id >= VariantId::M; }

inline bool has_single_room_vars(VariantId id) {
  return id >= VariantId::E;  // E,F,H,I,K and all stay-level variants
}

inline bool needs_s_max(VariantId id) {
  return id == VariantId::K || id == VariantId::P || id == VariantId::Pstar;
}

struct BuildOptions {
  // s^max_t per period 1..T; computed from the census when absent.
  std::optional<std::vector<int>> s_max_override;
  int bruteforce_rooms = 12;
};

namespace detail {

// LP-safe tokens for patients and rooms: ids pass through when purely
// alphanumeric and unique, otherwise the whole side falls back to positions.
inline std::vector<std::string> lp_tokens(const std::vector<std::string>& ids,
                                          char fallback_prefix) {
  std::vector<std::string> tokens;
  bool ok = true;
  std::set<std::string> seen;
  for (const auto& id : ids) {
    bool alnum = !id.empty();
    for (char ch : id)
      if (!std::isalnum(static_cast<unsigned char>(ch))) alnum = false;
    if (!alnum || !seen.insert(id).second) ok = false;
    tokens.push_back(id);
  }
  if (!ok)
    for (size_t i = 0; i < tokens.size(); ++i)
      tokens[i] = fallback_prefix + std::to_string(i);
  return tokens;
}

struct BuildContext {
  const Instance& inst;
  int T;
  int n_rooms;
  int n_pat;
  std::vector<std::string> ptok, rtok;
  std::vector<std::vector<int>> present;  // patient indices per period 1..T
  std::vector<int> prefix;                // pre-assigned room per patient, -1
  // Variable index tables, -1 where the variable does not exist.
  std::vector<int> x_prt;  // [p][r][t] flattened
  std::vector<int> x_pr;   // [p][r]
  std::vector<int> g_rt;   // [r][t]
  std::vector<int> m_rt;
  std::vector<int> s_prt;  // [p][r][t]
  std::vector<int> d_prt;

  explicit BuildContext(const Instance& instance)
      : inst(instance),
        T(instance.horizon),
        n_rooms(static_cast<int>(instance.ward.rooms.size())),
        n_pat(static_cast<int>(instance.patients.size())) {
    std::vector<std::string> pids, rids;
    for (const auto& p : inst.patients) pids.push_back(p.id);
    for (const auto& r : inst.ward.rooms) rids.push_back(r.id);
    ptok = lp_tokens(pids, 'q');
    rtok = lp_tokens(rids, 'w');
    present.assign(T + 1, {});
    for (int p = 0; p < n_pat; ++p) {
      const Patient& pat = inst.patients[p];
      for (int t = inst.first_period(pat); t < inst.end_period(pat); ++t)
        present[t].push_back(p);
    }
    prefix = inst.pre_assigned_room();
    x_prt.assign(static_cast<size_t>(n_pat) * n_rooms * (T + 1), -1);
    x_pr.assign(static_cast<size_t>(n_pat) * n_rooms, -1);
    g_rt.assign(static_cast<size_t>(n_rooms) * (T + 1), -1);
    m_rt.assign(static_cast<size_t>(n_rooms) * (T + 1), -1);
    s_prt.assign(static_cast<size_t>(n_pat) * n_rooms * (T + 1), -1);
    d_prt.assign(static_cast<size_t>(n_pat) * n_rooms * (T + 1), -1);
  }

  size_t prt(int p, int r, int t) const {
    return (static_cast<size_t>(p) * n_rooms + r) * (T + 1) + t;
  }
  size_t rt(int r, int t) const {
    return static_cast<size_t>(r) * (T + 1) + t;
  }

  int cap(int r) const { return inst.ward.rooms[r].capacity; }
  bool female(int p) const { return inst.patients[p].sex == Sex::Female; }
  bool priv(int p) const { return inst.patients[p].is_private; }
};

}  // namespace detail

inline BipModel add_objective_cuts(BipModel model, const Instance& inst,
                                   const std::vector<int>& s_max_per_t);
inline BipModel add_conflict_constraints(BipModel model, const Instance& inst);

// s^max_t for every period, from the override or the combinatorics module.
inline std::vector<int> s_max_per_period(const Instance& inst,
                                         const BuildOptions& options) {
  if (options.s_max_override) {
    if (static_cast<int>(options.s_max_override->size()) != inst.horizon)
      throw std::invalid_argument("s_max override must cover periods 1..T");
    return *options.s_max_override;
  }
  std::vector<int> smax(inst.horizon);
  for (int t = 1; t <= inst.horizon; ++t)
    smax[t - 1] =
        s_max_period_auto(census(inst, t), options.bruteforce_rooms).value;
  return smax;
}

// Builds the requested variant. Variable sets follow the formulation:
// x_{prt} and d_{prt} only over stay periods, x_{pr} for stay-level
// variants, g_{rt} always, m_{rt} only in A and C, s_{prt} only for private
// patients where the variant carries single-room constraints.
inline BipModel build(const Instance& inst, const Variant& variant,
                      const BuildOptions& options = {}) {
  using detail::BuildContext;
  const VariantId id = variant.id;
  BuildContext ctx(inst);
  BipModel model;

  const bool stay = is_stay_level(id);
  const bool with_s = has_single_room_vars(id);
  const bool with_m = id == VariantId::A || id == VariantId::C;
  const bool prefix_fixed = id == VariantId::M || id == VariantId::N ||
                            id == VariantId::O || id == VariantId::P;

  // Variables.
  for (int p = 0; p < ctx.n_pat; ++p) {
    const Patient& pat = inst.patients[p];
    int first = inst.first_period(pat), end = inst.end_period(pat);
    if (stay) {
      if (first >= end) continue;
      for (int r = 0; r < ctx.n_rooms; ++r)
        ctx.x_pr[p * ctx.n_rooms + r] = model.add_var(
            "x_" + ctx.ptok[p] + "_" + ctx.rtok[r], VarTag::AssignPR, p, r);
    } else {
      for (int t = first; t < end; ++t)
        for (int r = 0; r < ctx.n_rooms; ++r)
          ctx.x_prt[ctx.prt(p, r, t)] = model.add_var(
              "x_" + ctx.ptok[p] + "_" + ctx.rtok[r] + "_" + std::to_string(t),
              VarTag::AssignPRT, p, r, t);
    }
  }
  for (int r = 0; r < ctx.n_rooms; ++r)
    for (int t = 1; t <= ctx.T; ++t)
      ctx.g_rt[ctx.rt(r, t)] = model.add_var(
          "g_" + ctx.rtok[r] + "_" + std::to_string(t), VarTag::FemaleRoom, -1,
          r, t);
  if (with_m)
    for (int r = 0; r < ctx.n_rooms; ++r)
      for (int t = 1; t <= ctx.T; ++t)
        ctx.m_rt[ctx.rt(r, t)] = model.add_var(
            "m_" + ctx.rtok[r] + "_" + std::to_string(t), VarTag::MaleRoom, -1,
            r, t);
  if (with_s)
    for (int p = 0; p < ctx.n_pat; ++p) {
      if (!ctx.priv(p)) continue;
      const Patient& pat = inst.patients[p];
      for (int t = inst.first_period(pat); t < inst.end_period(pat); ++t)
        for (int r = 0; r < ctx.n_rooms; ++r)
          ctx.s_prt[ctx.prt(p, r, t)] = model.add_var(
              "s_" + ctx.ptok[p] + "_" + ctx.rtok[r] + "_" + std::to_string(t),
              VarTag::SingleRoom, p, r, t);
    }
  if (!stay)
    for (int p = 0; p < ctx.n_pat; ++p) {
      const Patient& pat = inst.patients[p];
      int first = inst.first_period(pat), end = inst.end_period(pat);
      for (int t = first; t + 2 < end + 1; ++t)  // t <= end - 2
        for (int r = 0; r < ctx.n_rooms; ++r)
          ctx.d_prt[ctx.prt(p, r, t)] = model.add_var(
              "d_" + ctx.ptok[p] + "_" + ctx.rtok[r] + "_" + std::to_string(t),
              VarTag::Transfer, p, r, t);
    }

  auto xvar = [&](int p, int r, int t) {
    return stay ? ctx.x_pr[p * ctx.n_rooms + r] : ctx.x_prt[ctx.prt(p, r, t)];
  };

  // Every patient gets a room in every period of their stay.
  if (stay) {
    for (int p = 0; p < ctx.n_pat; ++p) {
      if (ctx.x_pr[p * ctx.n_rooms] < 0) continue;
      std::vector<std::pair<int, int>> terms;
      for (int r = 0; r < ctx.n_rooms; ++r)
        terms.push_back({1, ctx.x_pr[p * ctx.n_rooms + r]});
      model.add_constraint(std::move(terms), Relation::Equal, 1,
                           "assign_" + ctx.ptok[p]);
    }
  } else {
    for (int t = 1; t <= ctx.T; ++t)
      for (int p : ctx.present[t]) {
        std::vector<std::pair<int, int>> terms;
        for (int r = 0; r < ctx.n_rooms; ++r)
          terms.push_back({1, ctx.x_prt[ctx.prt(p, r, t)]});
        model.add_constraint(std::move(terms), Relation::Equal, 1,
                             "assign_" + ctx.ptok[p] + "_" + std::to_string(t));
      }
  }

  const bool plain_capacity = id == VariantId::A || id == VariantId::B ||
                              id == VariantId::M;
  if (plain_capacity)
    for (int t = 1; t <= ctx.T; ++t)
      for (int r = 0; r < ctx.n_rooms; ++r) {
        std::vector<std::pair<int, int>> terms;
        for (int p : ctx.present[t]) terms.push_back({1, xvar(p, r, t)});
        model.add_constraint(std::move(terms), Relation::LessEq, ctx.cap(r),
                             "cap_" + ctx.rtok[r] + "_" + std::to_string(t));
      }

  // Sex separation, in the variant's formulation.
  if (id == VariantId::A) {
    for (int t = 1; t <= ctx.T; ++t)
      for (int p : ctx.present[t])
        for (int r = 0; r < ctx.n_rooms; ++r) {
          int link =
              ctx.female(p) ? ctx.g_rt[ctx.rt(r, t)] : ctx.m_rt[ctx.rt(r, t)];
          model.add_constraint({{1, xvar(p, r, t)}, {-1, link}},
                               Relation::LessEq, 0,
                               ctx.female(p) ? "sex_f" : "sex_m");
        }
    for (int t = 1; t <= ctx.T; ++t)
      for (int r = 0; r < ctx.n_rooms; ++r)
        model.add_constraint(
            {{1, ctx.g_rt[ctx.rt(r, t)]}, {1, ctx.m_rt[ctx.rt(r, t)]}},
            Relation::LessEq, 1, "sex_gm");
  } else if (id == VariantId::B || id == VariantId::M) {
    for (int t = 1; t <= ctx.T; ++t)
      for (int p : ctx.present[t])
        for (int r = 0; r < ctx.n_rooms; ++r) {
          int g = ctx.g_rt[ctx.rt(r, t)];
          if (ctx.female(p))
            model.add_constraint({{1, xvar(p, r, t)}, {-1, g}},
                                 Relation::LessEq, 0, "sex_f");
          else
            model.add_constraint({{1, xvar(p, r, t)}, {1, g}},
                                 Relation::LessEq, 1, "sex_m");
        }
  } else if (id == VariantId::C) {
    for (int t = 1; t <= ctx.T; ++t)
      for (int r = 0; r < ctx.n_rooms; ++r) {
        std::vector<std::pair<int, int>> female_terms, male_terms;
        for (int p : ctx.present[t])
          (ctx.female(p) ? female_terms : male_terms)
              .push_back({1, xvar(p, r, t)});
        female_terms.push_back({-ctx.cap(r), ctx.g_rt[ctx.rt(r, t)]});
        male_terms.push_back({-ctx.cap(r), ctx.m_rt[ctx.rt(r, t)]});
        model.add_constraint(std::move(female_terms), Relation::LessEq, 0,
                             "capsex_f");
        model.add_constraint(std::move(male_terms), Relation::LessEq, 0,
                             "capsex_m");
        model.add_constraint(
            {{1, ctx.g_rt[ctx.rt(r, t)]}, {1, ctx.m_rt[ctx.rt(r, t)]}},
            Relation::LessEq, 1, "sex_gm");
      }
  } else if (id == VariantId::D || id == VariantId::E || id == VariantId::F ||
             id == VariantId::N) {
    for (int t = 1; t <= ctx.T; ++t)
      for (int r = 0; r < ctx.n_rooms; ++r) {
        std::vector<std::pair<int, int>> female_terms, male_terms;
        for (int p : ctx.present[t])
          (ctx.female(p) ? female_terms : male_terms)
              .push_back({1, xvar(p, r, t)});
        int g = ctx.g_rt[ctx.rt(r, t)];
        female_terms.push_back({-ctx.cap(r), g});
        male_terms.push_back({ctx.cap(r), g});
        model.add_constraint(std::move(female_terms), Relation::LessEq, 0,
                             "capsex_f");
        model.add_constraint(std::move(male_terms), Relation::LessEq,
                             ctx.cap(r), "capsex_m");
      }
  } else {
    // H, I, K, O, P, Ostar, Pstar: single-room constraints integrated with
    // capacity and sex separation.
    for (int t = 1; t <= ctx.T; ++t)
      for (int r = 0; r < ctx.n_rooms; ++r) {
        std::vector<std::pair<int, int>> female_terms, male_terms;
        for (int p : ctx.present[t]) {
          auto& side = ctx.female(p) ? female_terms : male_terms;
          side.push_back({1, xvar(p, r, t)});
          if (ctx.priv(p) && ctx.cap(r) > 1)
            side.push_back({ctx.cap(r) - 1, ctx.s_prt[ctx.prt(p, r, t)]});
        }
        int g = ctx.g_rt[ctx.rt(r, t)];
        female_terms.push_back({-ctx.cap(r), g});
        male_terms.push_back({ctx.cap(r), g});
        model.add_constraint(std::move(female_terms), Relation::LessEq, 0,
                             "single_f");
        model.add_constraint(std::move(male_terms), Relation::LessEq,
                             ctx.cap(r), "single_m");
      }
  }

  // Single-room linking: s <= x, plus the standalone room-emptiness form for
  // variants that keep capacity constraints separate.
  if (with_s)
    for (int t = 1; t <= ctx.T; ++t)
      for (int p : ctx.present[t]) {
        if (!ctx.priv(p)) continue;
        for (int r = 0; r < ctx.n_rooms; ++r) {
          int s = ctx.s_prt[ctx.prt(p, r, t)];
          model.add_constraint({{1, s}, {-1, xvar(p, r, t)}}, Relation::LessEq,
                               0, "s_link");
          if (id == VariantId::E || id == VariantId::F || id == VariantId::M ||
              id == VariantId::N) {
            std::vector<std::pair<int, int>> terms{{ctx.cap(r), s}};
            for (int q : ctx.present[t])
              if (q != p) terms.push_back({1, xvar(q, r, t)});
            model.add_constraint(std::move(terms), Relation::LessEq,
                                 ctx.cap(r), "s_alone");
          }
        }
      }

  // Transfer counting for per-period variants.
  if (!stay)
    for (int p = 0; p < ctx.n_pat; ++p) {
      const Patient& pat = inst.patients[p];
      int first = inst.first_period(pat), end = inst.end_period(pat);
      for (int t = first; t + 2 < end + 1; ++t)
        for (int r = 0; r < ctx.n_rooms; ++r)
          model.add_constraint({{1, ctx.x_prt[ctx.prt(p, r, t)]},
                                {-1, ctx.x_prt[ctx.prt(p, r, t + 1)]},
                                {-1, ctx.d_prt[ctx.prt(p, r, t)]}},
                               Relation::LessEq, 0, "transfer");
    }

  // Pre-assignments: hard fix for the no-transfer family.
  if (prefix_fixed)
    for (int p = 0; p < ctx.n_pat; ++p)
      if (ctx.prefix[p] >= 0 && ctx.x_pr[p * ctx.n_rooms] >= 0)
        model.add_constraint({{1, ctx.x_pr[p * ctx.n_rooms + ctx.prefix[p]]}},
                             Relation::Equal, 1, "prefix_" + ctx.ptok[p]);

  // Fix the number of private patients in single rooms to s^max_t.
  if (needs_s_max(id)) {
    std::vector<int> smax = s_max_per_period(inst, options);
    for (int t = 1; t <= ctx.T; ++t) {
      std::vector<std::pair<int, int>> terms;
      for (int p : ctx.present[t])
        if (ctx.priv(p))
          for (int r = 0; r < ctx.n_rooms; ++r)
            terms.push_back({1, ctx.s_prt[ctx.prt(p, r, t)]});
      if (terms.empty() && smax[t - 1] <= 0) continue;
      model.add_constraint(std::move(terms), Relation::GreaterEq, smax[t - 1],
                           "fix_smax_" + std::to_string(t));
    }
  }

  // Objectives, in the variant's priority order.
  auto transfer_objective = [&]() {
    Objective obj;
    obj.sense = Sense::Minimize;
    obj.label = "transfers";
    for (int p = 0; p < ctx.n_pat; ++p)
      for (int r = 0; r < ctx.n_rooms; ++r)
        for (int t = 1; t <= ctx.T; ++t)
          if (ctx.d_prt[ctx.prt(p, r, t)] >= 0)
            obj.terms.push_back({1, ctx.d_prt[ctx.prt(p, r, t)]});
    for (int p = 0; p < ctx.n_pat; ++p)
      if (ctx.prefix[p] >= 0 && inst.present(inst.patients[p], 1)) {
        obj.constant += 1;
        obj.terms.push_back({-1, xvar(p, ctx.prefix[p], 1)});
      }
    return obj;
  };
  auto private_objective = [&]() {
    Objective obj;
    obj.sense = Sense::Maximize;
    obj.label = "private_days";
    for (size_t i = 0; i < ctx.s_prt.size(); ++i)
      if (ctx.s_prt[i] >= 0) obj.terms.push_back({1, ctx.s_prt[i]});
    return obj;
  };
  auto retention_objective = [&]() {
    Objective obj;
    obj.sense = Sense::Maximize;
    obj.label = "retention";
    for (int p = 0; p < ctx.n_pat; ++p)
      if (ctx.prefix[p] >= 0 && ctx.x_pr[p * ctx.n_rooms] >= 0)
        obj.terms.push_back({1, ctx.x_pr[p * ctx.n_rooms + ctx.prefix[p]]});
    return obj;
  };

  switch (id) {
    case VariantId::A:
    case VariantId::B:
    case VariantId::C:
    case VariantId::D:
    case VariantId::K:
      model.objectives.push_back(transfer_objective());
      break;
    case VariantId::E:
    case VariantId::H:
      model.objectives.push_back(transfer_objective());
      model.objectives.push_back(private_objective());
      break;
    case VariantId::F:
    case VariantId::I:
      model.objectives.push_back(private_objective());
      model.objectives.push_back(transfer_objective());
      break;
    case VariantId::M:
    case VariantId::N:
    case VariantId::O:
      model.objectives.push_back(private_objective());
      break;
    case VariantId::P: {
      Objective zero;
      zero.sense = Sense::Maximize;
      zero.label = "feasibility";
      model.objectives.push_back(zero);
      break;
    }
    case VariantId::Ostar:
      model.objectives.push_back(private_objective());
      model.objectives.push_back(retention_objective());
      break;
    case VariantId::Pstar:
      model.objectives.push_back(retention_objective());
      break;
  }

  BipModel result = std::move(model);
  if (variant.with_objective_cuts) {
    std::vector<int> smax = s_max_per_period(inst, options);
    result = add_objective_cuts(std::move(result), inst, smax);
  }
  if (variant.with_conflicts)
    result = add_conflict_constraints(std::move(result), inst);
  return result;
}

// Valid inequalities sum_{p in P*(t), r} s_prt <= s^max_t, one per period.
inline BipModel add_objective_cuts(BipModel model, const Instance& inst,
                                   const std::vector<int>& s_max_per_t) {
  bool any_s = false;
  for (const auto& v : model.vars)
    if (v.tag == VarTag::SingleRoom) any_s = true;
  if (!any_s)
    throw std::invalid_argument(
        "objective cuts need single-room variables in the model");
  if (static_cast<int>(s_max_per_t.size()) != inst.horizon)
    throw std::invalid_argument("cuts need s_max for every period");
  std::vector<std::vector<std::pair<int, int>>> terms(inst.horizon + 1);
  for (const auto& v : model.vars)
    if (v.tag == VarTag::SingleRoom) terms[v.period].push_back({1, v.index});
  for (int t = 1; t <= inst.horizon; ++t) {
    if (terms[t].empty()) continue;
    model.add_constraint(std::move(terms[t]), Relation::LessEq,
                         s_max_per_t[t - 1], "cut_smax_" + std::to_string(t));
  }
  return model;
}

inline BipModel add_objective_cuts(BipModel model, const Instance& inst,
                                   const BuildOptions& options = {}) {
  return add_objective_cuts(std::move(model), inst,
                            s_max_per_period(inst, options));
}

// Conflict pairs must not share a room: stay-level models get one constraint
// per room, per-period models one per room and shared period.
inline BipModel add_conflict_constraints(BipModel model,
                                         const Instance& inst) {
  // Index assignment vars from the model itself.
  bool stay = false;
  for (const auto& v : model.vars)
    if (v.tag == VarTag::AssignPR) stay = true;
  int n_rooms = static_cast<int>(inst.ward.rooms.size());
  int T = inst.horizon;
  std::vector<int> x(static_cast<size_t>(inst.patients.size()) * n_rooms *
                         (T + 2),
                     -1);
  auto slot = [&](int p, int r, int t) {
    return (static_cast<size_t>(p) * n_rooms + r) * (T + 2) + (t + 1);
  };
  for (const auto& v : model.vars) {
    if (v.tag == VarTag::AssignPR)
      x[slot(v.patient, v.room, -1)] = v.index;
    else if (v.tag == VarTag::AssignPRT)
      x[slot(v.patient, v.room, v.period)] = v.index;
  }
  for (const auto& [pid, qid] : inst.conflicts) {
    int p = inst.patient_index(pid), q = inst.patient_index(qid);
    const Patient& pp = inst.patients[p];
    const Patient& qq = inst.patients[q];
    int lo = std::max(inst.first_period(pp), inst.first_period(qq));
    int hi = std::min(inst.end_period(pp), inst.end_period(qq));
    if (lo >= hi) continue;  // disjoint stays: nothing to forbid
    for (int r = 0; r < n_rooms; ++r) {
      if (stay) {
        if (x[slot(p, r, -1)] < 0 || x[slot(q, r, -1)] < 0) continue;
        model.add_constraint({{1, x[slot(p, r, -1)]}, {1, x[slot(q, r, -1)]}},
                             Relation::LessEq, 1, "conflict");
      } else {
        for (int t = lo; t < hi; ++t)
          model.add_constraint({{1, x[slot(p, r, t)]}, {1, x[slot(q, r, t)]}},
                               Relation::LessEq, 1, "conflict");
      }
    }
  }
  return model;
}

// Reads the assignment out of a 0/1 solution; stay-level rooms are expanded
// over the stay. The result must re-validate cleanly, anything else signals
// a formulation bug and throws.
inline Assignment extract_assignment(const Instance& inst,
                                     const BipModel& model,
                                     const VarAssignment& values) {
  Assignment a;
  std::vector<int> stay_room(inst.patients.size(), -1);
  std::vector<char> has_stay_var(inst.patients.size(), 0);
  for (const auto& v : model.vars) {
    if (v.tag == VarTag::AssignPR) {
      has_stay_var[v.patient] = 1;
      if (!values.get(v.index)) continue;
      if (stay_room[v.patient] >= 0)
        throw std::logic_error("patient " + inst.patients[v.patient].id +
                               " assigned to multiple rooms");
      stay_room[v.patient] = v.room;
    } else if (v.tag == VarTag::AssignPRT && values.get(v.index)) {
      const std::string& pid = inst.patients[v.patient].id;
      if (a.room_of(pid, v.period))
        throw std::logic_error("patient " + pid + " assigned to multiple " +
                               "rooms in period " + std::to_string(v.period));
      a.set(pid, v.period, inst.ward.rooms[v.room].id);
    }
  }
  for (size_t p = 0; p < inst.patients.size(); ++p) {
    if (!has_stay_var[p]) continue;
    if (stay_room[p] < 0)
      throw std::logic_error("patient " + inst.patients[p].id +
                             " has no room");
    const Patient& pat = inst.patients[p];
    for (int t = inst.first_period(pat); t < inst.end_period(pat); ++t)
      a.set(pat.id, t, inst.ward.rooms[stay_room[p]].id);
  }
  ValidationReport report = validate_assignment(inst, a);
  if (!report.ok())
    throw std::logic_error(
        "extracted assignment fails validation (" +
        std::to_string(report.violations.size()) + " violations)");
  return a;
}

// Objective values from the model expressions, cross-checked against the
// assignment-level recount. A mismatch is a formulation bug.
inline std::pair<int, int> evaluate_objectives(const Instance& inst,
                                               const BipModel& model,
                                               const VarAssignment& values,
                                               const Variant& variant) {
  Assignment a = extract_assignment(inst, model, values);
  int trans = count_transfers(inst, a);
  int priv = count_private_single_days(inst, a);

  bool stay = is_stay_level(variant.id);
  bool prefix_fixed = variant.id == VariantId::M || variant.id == VariantId::N ||
                      variant.id == VariantId::O || variant.id == VariantId::P;
  long long trans_expr = 0;
  if (!stay) {
    std::vector<int> prefix = inst.pre_assigned_room();
    for (const auto& v : model.vars) {
      if (v.tag == VarTag::Transfer && values.get(v.index)) trans_expr++;
      if (v.tag == VarTag::AssignPRT && v.period == 1 &&
          prefix[v.patient] == v.room)
        trans_expr += values.get(v.index) ? 0 : 1;
    }
  } else if (!prefix_fixed) {
    std::vector<int> prefix = inst.pre_assigned_room();
    for (const auto& v : model.vars)
      if (v.tag == VarTag::AssignPR && prefix[v.patient] == v.room &&
          inst.present(inst.patients[v.patient], 1))
        trans_expr += values.get(v.index) ? 0 : 1;
  }
  if (trans_expr != trans)
    throw std::logic_error("transfer objective mismatch: model " +
                           std::to_string(trans_expr) + " vs recount " +
                           std::to_string(trans));

  if (has_single_room_vars(variant.id)) {
    long long priv_expr = 0;
    for (const auto& v : model.vars)
      if (v.tag == VarTag::SingleRoom && values.get(v.index)) priv_expr++;
    if (priv_expr != priv)
      throw std::logic_error("private objective mismatch: model " +
                             std::to_string(priv_expr) + " vs recount " +
                             std::to_string(priv));
  }
  return {trans, priv};
}

}  // namespace pra
