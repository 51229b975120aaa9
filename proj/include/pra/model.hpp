// Solver-agnostic binary integer programs: variables with provenance tags,
// integer linear constraints, an ordered (lexicographic) objective stack,
// LP-format text emission, solution parsing, and an embedded depth-first
// solver with bound propagation for oracle-sized models.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pra {

enum class VarTag {
  AssignPRT,   // x_{prt}
  AssignPR,    // x_{pr}, stay-level
  FemaleRoom,  // g_{rt}
  MaleRoom,    // m_{rt}
  SingleRoom,  // s_{prt}
  Transfer,    // d_{prt}
};

struct VarRef {
  int index = -1;
  std::string name;  // [A-Za-z0-9_] only, unique within a model
  VarTag tag = VarTag::AssignPRT;
  int patient = -1;
  int room = -1;
  int period = -1;
};

enum class Relation { LessEq, Equal, GreaterEq };

struct LinearConstraint {
  std::vector<std::pair<int, int>> terms;  // (coefficient, variable index)
  Relation rel = Relation::LessEq;
  int rhs = 0;
  std::string label;
};

enum class Sense { Minimize, Maximize };

struct Objective {
  Sense sense = Sense::Minimize;
  std::vector<std::pair<int, int>> terms;
  int constant = 0;  // evaluated but not emitted in LP text
  std::string label;
};

struct BipModel {
  std::vector<VarRef> vars;
  std::vector<LinearConstraint> constraints;
  std::vector<Objective> objectives;  // position = lexicographic priority
  std::unordered_map<std::string, int> var_by_name;

  int add_var(const std::string& name, VarTag tag, int patient = -1,
              int room = -1, int period = -1) {
    if (var_by_name.count(name))
      throw std::invalid_argument("duplicate variable name " + name);
    int idx = static_cast<int>(vars.size());
    vars.push_back({idx, name, tag, patient, room, period});
    var_by_name.emplace(name, idx);
    return idx;
  }

  void add_constraint(std::vector<std::pair<int, int>> terms, Relation rel,
                      int rhs, std::string label) {
    constraints.push_back({std::move(terms), rel, rhs, std::move(label)});
  }

  int find_var(const std::string& name) const {
    auto it = var_by_name.find(name);
    return it == var_by_name.end() ? -1 : it->second;
  }
};

// Dense 0/1 value per model variable.
struct VarAssignment {
  std::vector<uint8_t> values;

  bool get(int var) const { return values[var] != 0; }
};

inline long long evaluate(const Objective& obj, const VarAssignment& va) {
  long long v = obj.constant;
  for (const auto& [coef, var] : obj.terms)
    if (va.get(var)) v += coef;
  return v;
}

inline bool satisfied(const LinearConstraint& c, const VarAssignment& va) {
  long long lhs = 0;
  for (const auto& [coef, var] : c.terms)
    if (va.get(var)) lhs += coef;
  switch (c.rel) {
    case Relation::LessEq: return lhs <= c.rhs;
    case Relation::Equal: return lhs == c.rhs;
    case Relation::GreaterEq: return lhs >= c.rhs;
  }
  return false;
}

// --- LP text -----------------------------------------------------------------

// Emits the selected objective and all constraints in LP text format.
// Output is deterministic: variables and constraints keep model order,
// constraint labels are positional c0..cN.
inline std::string write_lp(const BipModel& model, size_t objective_index) {
  if (objective_index >= model.objectives.size())
    throw std::invalid_argument("objective index out of range");
  const Objective& obj = model.objectives[objective_index];

  auto append_terms = [&](std::ostringstream& out,
                          const std::vector<std::pair<int, int>>& terms) {
    bool first = true;
    for (const auto& [coef, var] : terms) {
      if (coef == 0) continue;
      if (first) {
        if (coef < 0) out << "- ";
        first = false;
      } else {
        out << (coef < 0 ? " - " : " + ");
      }
      int mag = coef < 0 ? -coef : coef;
      if (mag != 1) out << mag << ' ';
      out << model.vars[var].name;
    }
  };

  std::ostringstream out;
  out << (obj.sense == Sense::Maximize ? "Maximize" : "Minimize") << '\n';
  out << " obj:";
  if (!obj.terms.empty()) {
    out << ' ';
    append_terms(out, obj.terms);
  }
  out << '\n';
  out << "Subject To\n";
  for (size_t i = 0; i < model.constraints.size(); ++i) {
    const LinearConstraint& c = model.constraints[i];
    out << " c" << i << ": ";
    append_terms(out, c.terms);
    if (c.terms.empty()) out << "0";
    switch (c.rel) {
      case Relation::LessEq: out << " <= "; break;
      case Relation::Equal: out << " = "; break;
      case Relation::GreaterEq: out << " >= "; break;
    }
    out << c.rhs << '\n';
  }
  out << "Binary\n";
  for (const auto& v : model.vars) out << ' ' << v.name << '\n';
  out << "End\n";
  return out.str();
}

// Parses "name value" lines; '#' starts a comment line; variables not
// mentioned default to 0. Values must be integral within 1e-6.
inline VarAssignment parse_solution(const std::string& text,
                                    const BipModel& model) {
  VarAssignment va;
  va.values.assign(model.vars.size(), 0);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    std::string name;
    double value = 0.0;
    if (!(fields >> name >> value))
      throw std::invalid_argument("malformed solution line: " + line);
    int var = model.find_var(name);
    if (var < 0) throw std::invalid_argument("unknown variable " + name);
    if (value > -1e-6 && value < 1e-6) {
      va.values[var] = 0;
    } else if (value > 1.0 - 1e-6 && value < 1.0 + 1e-6) {
      va.values[var] = 1;
    } else {
      throw std::invalid_argument("non-integral value for " + name + ": " +
                                  std::to_string(value));
    }
  }
  return va;
}

// Renders a VarAssignment in the same format (1-valued variables only).
inline std::string render_solution(const VarAssignment& va,
                                   const BipModel& model) {
  std::ostringstream out;
  for (const auto& v : model.vars)
    if (va.get(v.index)) out << v.name << " 1\n";
  return out.str();
}

// --- Embedded exhaustive solver ------------------------------------------------

struct BruteforceLimits {
  long long node_limit = 10'000'000;
  std::optional<double> stage_time_limit_s;
  // Optional per-stage optimum bound; when the incumbent reaches it the
  // stage stops early with a proven optimum.
  std::vector<std::optional<long long>> stage_bounds;
};

struct BruteforceResult {
  enum class Status { Optimal, Infeasible, NodeLimit } status =
      Status::Infeasible;
  // One value per completed stage; on NodeLimit the interrupted stage's
  // incumbent value is appended when an incumbent exists.
  std::vector<long long> objective_values;
  std::optional<VarAssignment> values;
  long long nodes = 0;
};

namespace detail {

// Depth-first 0/1 search with per-constraint reachability bounds and unit
// forcing. One instance solves one objective stage.
class BfEngine {
 public:
  BfEngine(const BipModel& model,
           const std::vector<LinearConstraint>& constraints)
      : model_(model), cons_(constraints) {
    size_t n = model.vars.size();
    value_.assign(n, kUnfixed);
    occ_.assign(n, {});
    min_lhs_.assign(cons_.size(), 0);
    max_lhs_.assign(cons_.size(), 0);
    for (size_t ci = 0; ci < cons_.size(); ++ci) {
      for (const auto& [coef, var] : cons_[ci].terms) {
        occ_[var].push_back({static_cast<int>(ci), coef});
        min_lhs_[ci] += std::min(coef, 0);
        max_lhs_[ci] += std::max(coef, 0);
      }
    }
    branch_order_ = make_branch_order();
  }

  // Optimizes `obj` subject to the constraints; `prior_nodes` counts toward
  // the node limit across stages.
  void run(const Objective& obj, const BruteforceLimits& limits,
           long long prior_nodes, std::optional<long long> stage_bound) {
    deadline_.reset();
    if (limits.stage_time_limit_s)
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(*limits.stage_time_limit_s));
    obj_coef_.assign(model_.vars.size(), 0);
    sense_flip_ = obj.sense == Sense::Minimize ? -1 : 1;
    obj_fixed_ = 0;
    obj_slack_ = 0;
    for (const auto& [coef, var] : obj.terms) {
      int c = coef * sense_flip_;
      obj_coef_[var] += c;
    }
    for (size_t v = 0; v < obj_coef_.size(); ++v)
      if (value_[v] == kUnfixed)
        obj_slack_ += std::max(obj_coef_[v], 0);
      else if (value_[v] == 1)
        obj_fixed_ += obj_coef_[v];
    bound_ = stage_bound ? std::optional<long long>(
                               (*stage_bound - obj.constant) * sense_flip_)
                         : std::nullopt;
    constant_ = obj.constant;
    nodes_ = prior_nodes;
    limits_ = &limits;
    limit_hit_ = false;
    incumbent_.reset();
    incumbent_value_ = 0;

    size_t trail_mark = trail_.size();
    if (propagate_all()) dfs(0);
    unwind(trail_mark);
  }

  bool limit_hit() const { return limit_hit_; }
  long long nodes() const { return nodes_; }
  bool has_incumbent() const { return incumbent_.has_value(); }
  long long incumbent_value() const {
    return (incumbent_value_ + constant_ * sense_flip_) * sense_flip_;
  }
  const VarAssignment& incumbent() const { return *incumbent_; }

  // Permanently fixes the engine to honor an extra constraint (used for
  // lexicographic objective fixing between stages).
  void add_constraint(const LinearConstraint& c) {
    int ci = static_cast<int>(cons_.size());
    cons_.push_back(c);
    min_lhs_.push_back(0);
    max_lhs_.push_back(0);
    for (const auto& [coef, var] : c.terms) {
      occ_[var].push_back({ci, coef});
      if (value_[var] == kUnfixed) {
        min_lhs_[ci] += std::min(coef, 0);
        max_lhs_[ci] += std::max(coef, 0);
      } else if (value_[var] == 1) {
        min_lhs_[ci] += coef;
        max_lhs_[ci] += coef;
      }
    }
  }

 private:
  static constexpr int8_t kUnfixed = -1;

  std::vector<int> make_branch_order() const {
    auto rank = [](VarTag t) {
      switch (t) {
        case VarTag::SingleRoom: return 0;
        case VarTag::AssignPRT:
        case VarTag::AssignPR: return 1;
        case VarTag::FemaleRoom:
        case VarTag::MaleRoom: return 2;
        case VarTag::Transfer: return 3;
      }
      return 4;
    };
    std::vector<int> order(model_.vars.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return rank(model_.vars[a].tag) < rank(model_.vars[b].tag);
    });
    return order;
  }

  bool fix(int var, int8_t val) {
    value_[var] = val;
    trail_.push_back(var);
    if (val == 1)
      obj_fixed_ += obj_coef_[var];
    obj_slack_ -= std::max(obj_coef_[var], 0);
    for (const auto& [ci, coef] : occ_[var]) {
      if (val == 1) {
        min_lhs_[ci] += coef - std::min(coef, 0);
        max_lhs_[ci] += coef - std::max(coef, 0);
      } else {
        min_lhs_[ci] -= std::min(coef, 0);
        max_lhs_[ci] -= std::max(coef, 0);
      }
      const LinearConstraint& c = cons_[ci];
      if (c.rel != Relation::GreaterEq && min_lhs_[ci] > c.rhs) return false;
      if (c.rel != Relation::LessEq && max_lhs_[ci] < c.rhs) return false;
      pending_.push_back(ci);
    }
    return true;
  }

  void unfix(int var) {
    int8_t val = value_[var];
    value_[var] = kUnfixed;
    if (val == 1)
      obj_fixed_ -= obj_coef_[var];
    obj_slack_ += std::max(obj_coef_[var], 0);
    for (const auto& [ci, coef] : occ_[var]) {
      if (val == 1) {
        min_lhs_[ci] -= coef - std::min(coef, 0);
        max_lhs_[ci] -= coef - std::max(coef, 0);
      } else {
        min_lhs_[ci] += std::min(coef, 0);
        max_lhs_[ci] += std::max(coef, 0);
      }
    }
  }

  void unwind(size_t mark) {
    while (trail_.size() > mark) {
      unfix(trail_.back());
      trail_.pop_back();
    }
  }

  // Forces variables pinned by a single constraint. Returns false on
  // conflict. Newly forced variables are pushed on the trail.
  bool propagate() {
    while (!pending_.empty()) {
      int ci = pending_.back();
      pending_.pop_back();
      const LinearConstraint& c = cons_[ci];
      for (const auto& [coef, var] : c.terms) {
        if (value_[var] != kUnfixed) continue;
        bool can0 = true, can1 = true;
        if (c.rel != Relation::GreaterEq) {  // keep min <= rhs possible
          if (min_lhs_[ci] + std::max(coef, 0) > c.rhs) can1 = false;
          if (min_lhs_[ci] - std::min(coef, 0) > c.rhs) can0 = false;
        }
        if (c.rel != Relation::LessEq) {  // keep max >= rhs possible
          if (max_lhs_[ci] + std::min(coef, 0) < c.rhs) can1 = false;
          if (max_lhs_[ci] - std::max(coef, 0) < c.rhs) can0 = false;
        }
        if (!can0 && !can1) return false;
        if (can0 && can1) continue;
        if (!fix(var, can1 ? 1 : 0)) return false;
      }
    }
    return true;
  }

  bool propagate_all() {
    pending_.clear();
    for (size_t ci = 0; ci < cons_.size(); ++ci) {
      const LinearConstraint& c = cons_[ci];
      if (c.rel != Relation::GreaterEq && min_lhs_[ci] > c.rhs) return false;
      if (c.rel != Relation::LessEq && max_lhs_[ci] < c.rhs) return false;
      pending_.push_back(static_cast<int>(ci));
    }
    return propagate();
  }

  // Value to try first: improve the objective, else help an unsatisfied
  // covering constraint, else 0.
  int8_t preferred_value(int var) const {
    if (obj_coef_[var] > 0) return 1;
    if (obj_coef_[var] < 0) return 0;
    for (const auto& [ci, coef] : occ_[var]) {
      const LinearConstraint& c = cons_[ci];
      if (c.rel == Relation::LessEq || coef <= 0) continue;
      if (min_lhs_[ci] < c.rhs) return 1;
    }
    return 0;
  }

  void dfs(size_t order_pos) {
    if (limit_hit_) return;
    if (++nodes_ > limits_->node_limit) {
      limit_hit_ = true;
      return;
    }
    if ((nodes_ & 0x3ff) == 0 && deadline_ &&
        std::chrono::steady_clock::now() > *deadline_) {
      limit_hit_ = true;
      return;
    }
    while (order_pos < branch_order_.size() &&
           value_[branch_order_[order_pos]] != kUnfixed)
      order_pos++;
    if (order_pos == branch_order_.size()) {
      long long v = obj_fixed_;
      if (!incumbent_ || v > incumbent_value_) {
        incumbent_value_ = v;
        incumbent_ = VarAssignment{};
        incumbent_->values.assign(value_.size(), 0);
        for (size_t i = 0; i < value_.size(); ++i)
          incumbent_->values[i] = value_[i] == 1;
      }
      return;
    }
    // Prune when even the optimistic completion cannot strictly improve.
    if (incumbent_ && obj_fixed_ + obj_slack_ <= incumbent_value_) return;
    if (incumbent_ && bound_ && incumbent_value_ >= *bound_) return;

    int var = branch_order_[order_pos];
    int8_t first = preferred_value(var);
    for (int pass = 0; pass < 2; ++pass) {
      int8_t val = pass == 0 ? first : static_cast<int8_t>(1 - first);
      size_t mark = trail_.size();
      pending_.clear();
      if (fix(var, val) && propagate()) dfs(order_pos + 1);
      unwind(mark);
      if (limit_hit_) return;
    }
  }

  const BipModel& model_;
  std::vector<LinearConstraint> cons_;
  std::vector<std::vector<std::pair<int, int>>> occ_;
  std::vector<long long> min_lhs_, max_lhs_;
  std::vector<int8_t> value_;
  std::vector<int> trail_;
  std::vector<int> pending_;
  std::vector<int> branch_order_;
  std::vector<long long> obj_coef_;
  long long obj_fixed_ = 0, obj_slack_ = 0;
  int sense_flip_ = 1;
  long long constant_ = 0;
  std::optional<long long> bound_;
  const BruteforceLimits* limits_ = nullptr;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  long long nodes_ = 0;
  bool limit_hit_ = false;
  std::optional<VarAssignment> incumbent_;
  long long incumbent_value_ = 0;
};

}  // namespace detail

// Solves the whole lexicographic objective stack: optimize a stage, fix its
// achieved value with an equality constraint, continue. Exact but meant for
// oracle-sized models; the node limit is shared across stages.
inline BruteforceResult bruteforce_solve(const BipModel& model,
                                         const BruteforceLimits& limits = {}) {
  if (model.objectives.empty())
    throw std::invalid_argument("model has no objectives");
  detail::BfEngine engine(model, model.constraints);
  BruteforceResult result;
  for (size_t stage = 0; stage < model.objectives.size(); ++stage) {
    std::optional<long long> stage_bound;
    if (stage < limits.stage_bounds.size())
      stage_bound = limits.stage_bounds[stage];
    engine.run(model.objectives[stage], limits, result.nodes, stage_bound);
    result.nodes = engine.nodes();
    if (engine.limit_hit()) {
      result.status = BruteforceResult::Status::NodeLimit;
      if (engine.has_incumbent()) {
        result.objective_values.push_back(engine.incumbent_value());
        result.values = engine.incumbent();
      }
      return result;
    }
    if (!engine.has_incumbent()) {
      result.status = BruteforceResult::Status::Infeasible;
      result.values.reset();
      return result;
    }
    long long achieved = engine.incumbent_value();
    result.objective_values.push_back(achieved);
    result.values = engine.incumbent();
    if (stage + 1 < model.objectives.size()) {
      const Objective& obj = model.objectives[stage];
      LinearConstraint fixc;
      fixc.terms = obj.terms;
      fixc.rel = Relation::Equal;
      fixc.rhs = static_cast<int>(achieved - obj.constant);
      fixc.label = "fix_" + (obj.label.empty() ? "obj" : obj.label);
      engine.add_constraint(fixc);
    }
  }
  result.status = BruteforceResult::Status::Optimal;
  return result;
}

}  // namespace pra
