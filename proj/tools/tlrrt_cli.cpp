// Copyright 2026 The tlrrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tlrrt command-line front end.
//
// Exit codes: 0 success, 1 unexpected error, 2 bad configuration or input,
// 3 no plan found, 4 automaton has no accepting cycle, 5 plan failed validation.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tlrrt/benchmark.hpp"
#include "tlrrt/buchi.hpp"
#include "tlrrt/formula.hpp"
#include "tlrrt/io.hpp"
#include "tlrrt/planner.hpp"
#include "tlrrt/scenario.hpp"
#include "tlrrt/svg.hpp"

namespace
{

using namespace tlrrt;
using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kGeneric = 1,
  kConfig = 2,
  kNoPlan = 3,
  kInfeasible = 4,
  kInvalid = 5,
};

struct Inputs
{
  std::string env;
  std::string task;
  std::string formula;
  std::string hoa;
  std::string ap_map;
};

void add_inputs(CLI::App * cmd, Inputs & in, bool need_env)
{
  auto * env = cmd->add_option("--env", in.env, "environment JSON");
  if (need_env) {
    env->required();
  }
  cmd->add_option("--task", in.task, "task JSON (formula, initial positions, subformulas)");
  cmd->add_option("--formula", in.formula, "LTL formula, overrides the task formula");
  cmd->add_option("--hoa", in.hoa, "read the automaton from a HOA file instead of translating");
  cmd->add_option("--ap-map", in.ap_map, "JSON pairs mapping HOA AP names to atoms, e.g. [[\"a\", \"pi(1,2)\"]]");
}

ApMap load_ap_map(const std::string & path)
{
  ApMap out;
  if (path.empty()) {
    return out;
  }
  // Either [["a", "pi(1,2)"], ...] or {"a": "pi(1,2)", ...}.
  const json j = parse_json(read_file(path), path);
  std::vector<std::pair<std::string, json>> pairs;
  if (j.is_object()) {
    for (const auto & [name, v] : j.items()) {
      pairs.emplace_back(name, v);
    }
  } else if (j.is_array()) {
    for (const auto & e : j) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string()) {
        throw ConfigError(path + ": entries must be [name, atom] pairs");
      }
      pairs.emplace_back(e[0].get<std::string>(), e[1]);
    }
  } else {
    throw ConfigError(path + ": expected a list of pairs or an object");
  }
  for (const auto & [name, v] : pairs) {
    if (!v.is_string()) {
      throw ConfigError(path + ": atom for '" + name + "' must be a string");
    }
    const PropFormula f = parse_prop(v.get<std::string>());
    if (f.kind() != PropFormula::Kind::kAtom) {
      throw ConfigError(path + ": '" + name + "' must map to a single atom");
    }
    out[name] = f.atom_prop();
  }
  return out;
}

std::optional<AtomBounds> bounds_of(const std::optional<Workspace> & w)
{
  if (!w) {
    return std::nullopt;
  }
  return AtomBounds{w->n_robots(), w->n_regions()};
}

std::string formula_text(const Inputs & in, const std::optional<Task> & task)
{
  if (!in.formula.empty()) {
    return in.formula;
  }
  if (task) {
    return task->formula;
  }
  throw ConfigError("no formula given (use --formula or --task)");
}

Nba load_nba(const Inputs & in, const std::optional<Task> & task, const std::optional<Workspace> & w)
{
  if (!in.hoa.empty()) {
    return parse_hoa(read_file(in.hoa), load_ap_map(in.ap_map));
  }
  return ltl_to_nba(parse_ltl(formula_text(in, task), bounds_of(w)));
}

std::optional<Task> load_task_opt(const Inputs & in)
{
  if (in.task.empty()) {
    return std::nullopt;
  }
  return load_task(in.task);
}

void emit(const std::string & path, const std::string & content)
{
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_file(path, content);
  }
}

struct PlanFlags
{
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::string radius;
  std::optional<long> n_pre;
  std::optional<long> n_suf;
  std::optional<double> eta;
  std::optional<double> w;
  std::optional<double> time_limit;
  bool first_feasible = false;
};

void add_plan_flags(CLI::App * cmd, PlanFlags & f)
{
  cmd->add_option("--config", f.config, "planner parameters (JSON)");
  cmd->add_option("--seed", f.seed, "master seed")->required();
  cmd->add_option("--mode", f.mode, "unbiased or biased");
  cmd->add_option("--radius", f.radius, "practical, optimal or zero");
  cmd->add_option("--n-pre", f.n_pre, "prefix iterations");
  cmd->add_option("--n-suf", f.n_suf, "suffix iterations");
  cmd->add_option("--eta", f.eta, "steering step (default 0.25 N)");
  cmd->add_option("-w,--weight", f.w, "prefix weight in the cost");
  cmd->add_option("--time-limit", f.time_limit, "wall-clock limit in seconds");
  cmd->add_flag("--first-feasible", f.first_feasible, "stop at the first complete plan");
}

PlannerParams build_params(const PlanFlags & f, const std::optional<Task> & task, const std::optional<Workspace> & w)
{
  PlannerParams p;
  if (!f.config.empty()) {
    p = params_from_json(parse_json(read_file(f.config), f.config));
  }
  if (f.seed) {
    p.seed = *f.seed;
  }
  if (!f.mode.empty()) {
    p.mode = planner_mode_from_string(f.mode);
  }
  if (!f.radius.empty()) {
    p.radius_mode = radius_mode_from_string(f.radius);
  }
  if (f.n_pre) {
    p.n_max_pre = *f.n_pre;
  }
  if (f.n_suf) {
    p.n_max_suf = *f.n_suf;
  }
  if (f.eta) {
    p.eta = *f.eta;
  }
  if (f.w) {
    p.w = *f.w;
  }
  if (f.time_limit) {
    p.time_limit = *f.time_limit;
  }
  if (f.first_feasible) {
    p.first_feasible = true;
  }
  if (task) {
    for (const auto & s : task->subformulas) {
      p.subformulas.push_back(parse_prop(s, bounds_of(w)));
    }
  }
  p.validate();
  return p;
}

JointState require_initial(const std::optional<Task> & task, const Workspace & w)
{
  if (!task) {
    throw ConfigError("--task is required for initial positions");
  }
  if (static_cast<int>(task->initial.size()) != w.n_robots()) {
    throw ConfigError("task lists " + std::to_string(task->initial.size()) + " initial positions for " +
                      std::to_string(w.n_robots()) + " robots");
  }
  return initial_state(*task);
}

json stats_json(const RunStats & s)
{
  return {{"prefix_iterations", s.prefix_iterations},
          {"suffix_iterations", s.suffix_iterations},
          {"prefix_nodes", s.prefix_nodes},
          {"suffix_trees", s.suffix_trees},
          {"n_goal", s.n_goal},
          {"iterations_to_first_plan", s.iterations_to_first_plan},
          {"seconds", s.seconds},
          {"seconds_to_first_plan", s.seconds_to_first_plan},
          {"invariant_checks", s.invariant_checks},
          {"invariant_violations", s.invariant_violations},
          {"invariant_messages", s.invariant_messages},
          {"sampler_skips", s.sampler_skips},
          {"geodesic_fallbacks", s.geodesic_fallbacks},
          {"cycle_close_attempts", s.cycle_close_attempts},
          {"cycle_close_failures", s.cycle_close_failures},
          {"rejected_candidates", s.rejected_candidates},
          {"gamma_pre", s.gamma_pre},
          {"gamma_suf", s.gamma_suf},
          {"radius_fallback", s.radius_fallback},
          {"timed_out", s.timed_out}};
}

int cmd_plan(const Inputs & in, const PlanFlags & flags, const std::string & out, const std::string & stats_out)
{
  const Workspace w = load_workspace(in.env);
  const auto task = load_task_opt(in);
  const Nba nba = load_nba(in, task, w);
  const JointState x0 = require_initial(task, w);
  const PlannerParams p = build_params(flags, task, w);
  const PlanResult r = plan(w, nba, x0, p);
  if (!stats_out.empty()) {
    write_file(stats_out, stats_json(r.stats).dump(2) + "\n");
  }
  if (r.status == PlanStatus::kInfeasibleNba) {
    std::cerr << "infeasible: " << r.message << "\n";
    return kInfeasible;
  }
  if (!r.plan) {
    std::cerr << "no plan: " << r.message << "\n";
    return kNoPlan;
  }
  const auto diag = verify_plan(*r.plan, nba, w);
  if (!diag.ok()) {
    std::cerr << "internal error: plan failed validation: " << diag.message << "\n";
    return kInvalid;
  }
  emit(out, plan_to_string(*r.plan));
  std::fprintf(stderr, "J = %.6f (prefix %.6f, suffix %.6f), |P| = %d, %.3f s\n", r.plan->cost, r.plan->prefix_cost,
               r.plan->suffix_cost, r.stats.n_goal, r.stats.seconds);
  return kOk;
}

int cmd_translate(const Inputs & in, bool do_prune, const std::string & out)
{
  std::optional<Workspace> w;
  if (!in.env.empty()) {
    w = load_workspace(in.env);
  }
  const auto task = load_task_opt(in);
  Nba nba = load_nba(in, task, w);
  if (do_prune) {
    if (!w) {
      throw ConfigError("--prune needs --env");
    }
    nba = prune(nba, w->disjointness());
  }
  emit(out, to_hoa(nba, formula_text(in, task)));
  return kOk;
}

int cmd_validate(const Inputs & in, const std::string & plan_path)
{
  const Workspace w = load_workspace(in.env);
  const auto task = load_task_opt(in);
  const Nba nba = load_nba(in, task, w);
  const Plan p = load_plan(plan_path);
  const auto diag = verify_plan(p, nba, w);
  if (!diag.ok()) {
    std::cout << "invalid: " << diag.message;
    if (diag.step >= 0) {
      std::cout << " (transition " << diag.step;
      if (diag.robot >= 0) {
        std::cout << ", robot " << diag.robot;
      }
      std::cout << ")";
    }
    std::cout << "\n";
    return kInvalid;
  }
  std::cout << "ok\n";
  return kOk;
}

int cmd_benchmark(const Inputs & in, const PlanFlags & flags, int trials, int jobs, const std::string & csv,
                  const std::string & timings)
{
  const Workspace w = load_workspace(in.env);
  const auto task = load_task_opt(in);
  const Nba nba = load_nba(in, task, w);
  const JointState x0 = require_initial(task, w);
  const PlannerParams p = build_params(flags, task, w);
  const auto rep = run_benchmark(w, nba, x0, p, trials, p.seed, jobs);
  emit(csv, report_csv(rep));
  if (!timings.empty()) {
    write_file(timings, timings_csv(rep));
  }
  std::cerr << report_summary(rep);
  return kOk;
}

int cmd_plot(const std::string & env, const std::string & plan_path, const std::string & out)
{
  const Workspace w = load_workspace(env);
  std::optional<Plan> p;
  if (!plan_path.empty()) {
    p = load_plan(plan_path);
  }
  emit(out, render_svg(w, p ? &*p : nullptr));
  return kOk;
}

int cmd_gen(const std::string & name, double side, int robots, int m, std::uint64_t seed, const std::string & env_out,
            const std::string & task_out)
{
  Scenario s;
  if (name == "case1") {
    s = case1(side > 0 ? side : 0.15);
  } else if (name == "case2") {
    s = case2(side > 0 ? side : 0.25);
  } else if (name == "scatter") {
    s = scatter(robots, m, seed, side > 0 ? side : 0.15);
  } else {
    throw ConfigError("unknown scenario '" + name + "' (case1, case2, scatter)");
  }
  emit(env_out, workspace_to_json(s.workspace).dump(2) + "\n");
  if (!task_out.empty()) {
    write_file(task_out, task_to_json(s.task).dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Temporal logic RRT* planner for multi-robot teams"};
  app.require_subcommand(1);

  Inputs in;
  PlanFlags flags;
  std::string out;
  std::string stats_out;
  auto * plan_cmd = app.add_subcommand("plan", "synthesize a prefix-suffix plan");
  add_inputs(plan_cmd, in, true);
  add_plan_flags(plan_cmd, flags);
  plan_cmd->add_option("-o,--out", out, "plan JSON path (default stdout)");
  plan_cmd->add_option("--stats", stats_out, "write run statistics JSON");

  bool do_prune = false;
  auto * tr_cmd = app.add_subcommand("translate", "print the automaton of a formula in HOA format");
  add_inputs(tr_cmd, in, false);
  tr_cmd->add_flag("--prune", do_prune, "drop guard clauses that are infeasible in the environment");
  tr_cmd->add_option("-o,--out", out, "output path (default stdout)");

  std::string plan_path;
  auto * val_cmd = app.add_subcommand("validate", "check a plan against a formula and environment");
  add_inputs(val_cmd, in, true);
  val_cmd->add_option("--plan", plan_path, "plan JSON")->required();

  int trials = 20;
  int jobs = 1;
  std::string timings;
  auto * bench_cmd = app.add_subcommand("benchmark", "run seeded trials and report statistics");
  add_inputs(bench_cmd, in, true);
  add_plan_flags(bench_cmd, flags);
  bench_cmd->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--jobs", jobs, "parallel trials")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--csv", out, "per-trial CSV path (default stdout)");
  bench_cmd->add_option("--timings", timings, "runtime CSV path");

  std::string env_path;
  auto * plot_cmd = app.add_subcommand("plot", "draw an environment and optional plan as SVG");
  plot_cmd->add_option("--env", env_path, "environment JSON")->required();
  plot_cmd->add_option("--plan", plan_path, "plan JSON");
  plot_cmd->add_option("-o,--out", out, "SVG path (default stdout)");

  std::string scenario;
  double side = 0.0;
  int robots = 2;
  int m = 1;
  std::uint64_t gen_seed = 0;
  std::string task_out;
  auto * gen_cmd = app.add_subcommand("gen", "write a built-in scenario");
  gen_cmd->add_option("scenario", scenario, "case1, case2 or scatter")->required();
  gen_cmd->add_option("--side", side, "region leg length");
  gen_cmd->add_option("--robots", robots, "team size (scatter)");
  gen_cmd->add_option("--m", m, "atoms per subformula (scatter)");
  gen_cmd->add_option("--seed", gen_seed, "generator seed (scatter)");
  gen_cmd->add_option("--env-out", env_path, "environment JSON path (default stdout)");
  gen_cmd->add_option("--task-out", task_out, "task JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*plan_cmd) {
      return cmd_plan(in, flags, out, stats_out);
    }
    if (*tr_cmd) {
      return cmd_translate(in, do_prune, out);
    }
    if (*val_cmd) {
      return cmd_validate(in, plan_path);
    }
    if (*bench_cmd) {
      return cmd_benchmark(in, flags, trials, jobs, out, timings);
    }
    if (*plot_cmd) {
      return cmd_plot(env_path, plan_path, out);
    }
    if (*gen_cmd) {
      return cmd_gen(scenario, side, robots, m, gen_seed, env_path, task_out);
    }
  } catch (const ConfigError & e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ParseError & e) {
    std::cerr << "formula error at " << e.position() << ": " << e.what() << "\n";
    return kConfig;
  } catch (const HoaError & e) {
    std::cerr << "HOA error: " << e.what() << "\n";
    return kConfig;
  } catch (const GeometryError & e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument & e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGeneric;
  }
  return kGeneric;
}
