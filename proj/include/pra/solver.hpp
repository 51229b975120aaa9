// Lexicographic solve driver over pluggable backends: the embedded
// exhaustive solver, or an external MILP solver through LP/solution file
// exchange (see docs/solver-adapters.md for the adapter contract).
#pragma once

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pra/model.hpp"

namespace pra {

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit, BackendError };

inline const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "timelimit";
    case SolveStatus::BackendError: return "backend-error";
  }
  return "?";
}

struct SolveLimits {
  std::optional<double> time_limit_s;  // per objective stage
  long long node_limit = 10'000'000;   // embedded backend
  // Known per-stage optimum bounds; the embedded backend stops a stage early
  // once its incumbent reaches the bound.
  std::vector<std::optional<long long>> stage_bounds;
};

struct BackendConfig {
  enum class Kind { Embedded, External };
  Kind kind = Kind::Embedded;
  // Command template; {model_path}, {solution_path} and {time_limit} are
  // substituted. Must write "STATUS <optimal|infeasible|timelimit>" as the
  // first solution line, then "name value" pairs.
  std::string command;
  std::string workdir;  // exchange-file directory; empty = system temp
  // Environment variables forwarded to the command; empty = inherit all.
  std::vector<std::string> env_allowlist;
};

struct SolveResult {
  SolveStatus status = SolveStatus::BackendError;
  // One entry per completed objective stage (prefix of the priority stack).
  std::vector<long long> objective_values;
  std::optional<VarAssignment> values;
  double wall_time_s = 0.0;
  std::string diagnostics;
};

namespace detail {

inline std::string substitute(std::string tmpl, const std::string& key,
                              const std::string& value) {
  size_t pos;
  while ((pos = tmpl.find(key)) != std::string::npos)
    tmpl.replace(pos, key.size(), value);
  return tmpl;
}

inline SolveResult solve_embedded(const BipModel& model,
                                  const SolveLimits& limits) {
  BruteforceLimits bf;
  bf.node_limit = limits.node_limit;
  bf.stage_time_limit_s = limits.time_limit_s;
  bf.stage_bounds = limits.stage_bounds;
  BruteforceResult r = bruteforce_solve(model, bf);
  SolveResult out;
  out.objective_values = r.objective_values;
  if (r.values) out.values = std::move(r.values);
  switch (r.status) {
    case BruteforceResult::Status::Optimal:
      out.status = SolveStatus::Optimal;
      break;
    case BruteforceResult::Status::Infeasible:
      out.status = SolveStatus::Infeasible;
      break;
    case BruteforceResult::Status::NodeLimit:
      // Keep the incumbent when the search ran out of budget.
      out.status = out.values ? SolveStatus::Feasible : SolveStatus::TimeLimit;
      out.diagnostics = "search limit reached after " +
                        std::to_string(r.nodes) + " nodes";
      break;
  }
  return out;
}

inline SolveResult solve_external(const BipModel& model,
                                  const BackendConfig& backend,
                                  const SolveLimits& limits) {
  namespace fs = std::filesystem;
  static std::atomic<uint64_t> counter{0};
  SolveResult out;

  fs::path dir = backend.workdir.empty() ? fs::temp_directory_path()
                                         : fs::path(backend.workdir);
  std::error_code ec;
  fs::create_directories(dir, ec);

  BipModel work = model;  // fixing constraints are appended between stages
  for (size_t stage = 0; stage < model.objectives.size(); ++stage) {
    uint64_t run_id = counter.fetch_add(1);
    std::ostringstream base;
    base << "pra_run" << ::getpid() << "_" << run_id << "_s" << stage;
    fs::path model_path = dir / (base.str() + ".lp");
    fs::path solution_path = dir / (base.str() + ".sol");

    {
      std::ofstream lp(model_path);
      lp << write_lp(work, stage);
    }

    std::string cmd = backend.command;
    cmd = substitute(cmd, "{model_path}", model_path.string());
    cmd = substitute(cmd, "{solution_path}", solution_path.string());
    cmd = substitute(
        cmd, "{time_limit}",
        limits.time_limit_s ? std::to_string(*limits.time_limit_s) : "0");
    if (!backend.env_allowlist.empty()) {
      std::string env_cmd = "env -i";
      for (const auto& name : backend.env_allowlist) {
        const char* value = std::getenv(name.c_str());
        if (value) env_cmd += " " + name + "=" + value;
      }
      cmd = env_cmd + " " + cmd;
    }

    int rc = std::system(cmd.c_str());
    if (rc != 0) {
      out.status = SolveStatus::BackendError;
      out.diagnostics = "backend command exited with status " +
                        std::to_string(rc) + ": " + cmd;
      return out;
    }
    std::ifstream sol(solution_path);
    if (!sol) {
      out.status = SolveStatus::BackendError;
      out.diagnostics = "backend produced no solution file " +
                        solution_path.string();
      return out;
    }
    std::string status_line;
    std::getline(sol, status_line);
    std::stringstream rest;
    rest << sol.rdbuf();

    std::istringstream header(status_line);
    std::string word, status_token;
    header >> word >> status_token;
    if (word != "STATUS") {
      out.status = SolveStatus::BackendError;
      out.diagnostics = "solution file must start with a STATUS line, got: " +
                        status_line;
      return out;
    }

    if (status_token == "infeasible") {
      out.status = SolveStatus::Infeasible;
      return out;
    }
    if (status_token != "optimal" && status_token != "timelimit") {
      out.status = SolveStatus::BackendError;
      out.diagnostics = "unknown backend status: " + status_token;
      return out;
    }
    std::string body = rest.str();
    bool has_values = body.find_first_not_of(" \t\r\n") != std::string::npos;
    if (status_token == "timelimit" && !has_values) {
      out.status = SolveStatus::TimeLimit;
      return out;
    }

    VarAssignment values;
    try {
      values = parse_solution(body, work);
    } catch (const std::exception& e) {
      out.status = SolveStatus::BackendError;
      out.diagnostics = e.what();
      return out;
    }
    for (const auto& c : work.constraints)
      if (!satisfied(c, values)) {
        out.status = SolveStatus::BackendError;
        out.diagnostics = "backend solution violates constraint " + c.label;
        return out;
      }
    const Objective& obj = model.objectives[stage];
    long long achieved = evaluate(obj, values);
    out.objective_values.push_back(achieved);
    out.values = std::move(values);

    if (status_token == "timelimit") {
      out.status = SolveStatus::Feasible;  // incumbent kept, stack aborted
      return out;
    }
    if (stage + 1 < model.objectives.size()) {
      LinearConstraint fixc;
      fixc.terms = obj.terms;
      fixc.rel = Relation::Equal;
      fixc.rhs = static_cast<int>(achieved - obj.constant);
      fixc.label = "fix_stage" + std::to_string(stage);
      work.constraints.push_back(std::move(fixc));
    }
  }
  out.status = SolveStatus::Optimal;
  return out;
}

}  // namespace detail

inline SolveResult solve(const BipModel& model, const BackendConfig& backend,
                         const SolveLimits& limits = {}) {
  auto start = std::chrono::steady_clock::now();
  SolveResult out = backend.kind == BackendConfig::Kind::Embedded
                        ? detail::solve_embedded(model, limits)
                        : detail::solve_external(model, backend, limits);
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

// Re-checks every constraint and every completed objective stage against the
// result's values. False means the result cannot be trusted.
inline bool verify(const BipModel& model, const SolveResult& result) {
  if (!result.values) return false;
  const VarAssignment& values = *result.values;
  if (values.values.size() != model.vars.size()) return false;
  for (const auto& c : model.constraints)
    if (!satisfied(c, values)) return false;
  if (result.objective_values.size() > model.objectives.size()) return false;
  for (size_t i = 0; i < result.objective_values.size(); ++i)
    if (evaluate(model.objectives[i], values) != result.objective_values[i])
      return false;
  return true;
}

}  // namespace pra
