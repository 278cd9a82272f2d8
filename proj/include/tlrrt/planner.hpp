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

#ifndef TLRRT_PLANNER_HPP_
#define TLRRT_PLANNER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tlrrt/bias.hpp"
#include "tlrrt/buchi.hpp"
#include "tlrrt/geometry.hpp"
#include "tlrrt/product.hpp"
#include "tlrrt/rrt.hpp"

namespace tlrrt
{

enum class PlannerMode { kUnbiased, kBiased };

std::string to_string(PlannerMode m);
PlannerMode planner_mode_from_string(const std::string & s);

struct PlannerParams
{
  PlannerMode mode = PlannerMode::kUnbiased;
  RadiusMode radius_mode = RadiusMode::kPractical;
  long n_max_pre = 1000;
  long n_max_suf = 1000;
  double eta = 0.0;  // <= 0 selects 0.25 * N
  double w = 0.2;
  double theta = 0.24;
  double epsilon = 0.01;
  double kappa = 0.01;
  /// Cost estimates for the optimal radius; unset means a pilot run.
  std::optional<double> cost_estimate_pre;
  std::optional<double> cost_estimate_suf;
  /// Stop at the first complete plan instead of running n_max iterations.
  bool first_feasible = false;
  double time_limit = 0.0;  // seconds, 0 = none
  std::uint64_t seed = 0;
  BiasParams bias;
  CycleCloseParams cycle_close{1000, 0.2, 0.05, true};
  /// Conjunctions used by the multi-subformula pruning (biased mode).
  std::vector<PropFormula> subformulas;
  int check_every = 100;  // invariant check period, 0 disables

  double effective_eta(int n_robots) const { return eta > 0.0 ? eta : 0.25 * n_robots; }
  /// Throws std::invalid_argument when a value is out of range.
  void validate() const;
};

nlohmann::json params_to_json(const PlannerParams & p);
/// Overlays the keys present in j onto `base`.
PlannerParams params_from_json(const nlohmann::json & j, PlannerParams base = {});

enum class PlanStatus { kOk, kNoPlan, kInfeasibleNba };

std::string to_string(PlanStatus s);

struct RunStats
{
  long prefix_iterations = 0;
  long suffix_iterations = 0;
  int prefix_nodes = 0;
  int suffix_trees = 0;
  int n_goal = 0;  // |P| summed over prefix trees
  long iterations_to_first_plan = -1;
  double seconds = 0.0;
  double seconds_to_first_plan = -1.0;
  long invariant_checks = 0;
  long invariant_violations = 0;
  std::vector<std::string> invariant_messages;
  long sampler_skips = 0;
  long geodesic_fallbacks = 0;
  long cycle_close_attempts = 0;
  long cycle_close_failures = 0;
  long rejected_candidates = 0;  // assembled plans that failed verification
  double gamma_pre = 0.0;
  double gamma_suf = 0.0;
  bool radius_fallback = false;  // optimal radius requested but no estimate
  bool timed_out = false;
};

struct PlanResult
{
  PlanStatus status = PlanStatus::kNoPlan;
  std::optional<Plan> plan;
  RunStats stats;
  std::string message;
};

PlanResult plan_unbiased(const Workspace & w, const Nba & nba, const JointState & x0, const PlannerParams & p);
PlanResult plan_biased(const Workspace & w, const Nba & nba, const JointState & x0, const PlannerParams & p);
/// Dispatches on p.mode.
PlanResult plan(const Workspace & w, const Nba & nba, const JointState & x0, const PlannerParams & p);

}  // namespace tlrrt

#endif  // TLRRT_PLANNER_HPP_
