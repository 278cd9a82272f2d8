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

#include "tlrrt/product.hpp"

#include <cmath>

namespace tlrrt
{

double cost_c(const JointState & a, const JointState & b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double path_cost(const std::vector<JointState> & waypoints)
{
  double c = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    c += cost_c(waypoints[i - 1], waypoints[i]);
  }
  return c;
}

double suffix_loop_cost(const Plan & plan)
{
  if (plan.suffix.empty() || plan.prefix.empty()) {
    return 0.0;
  }
  const JointState & anchor = plan.prefix.back();
  return cost_c(anchor, plan.suffix.front()) + path_cost(plan.suffix) + cost_c(plan.suffix.back(), anchor);
}

double plan_cost(const Plan & plan, double w)
{
  return w * path_cost(plan.prefix) + (1.0 - w) * suffix_loop_cost(plan);
}

void refresh_costs(Plan & plan)
{
  plan.prefix_cost = path_cost(plan.prefix);
  plan.suffix_cost = suffix_loop_cost(plan);
  plan.cost = plan.weight * plan.prefix_cost + (1.0 - plan.weight) * plan.suffix_cost;
}

std::vector<LabelSet> trace_of(const Workspace & w, const std::vector<JointState> & waypoints)
{
  std::vector<LabelSet> out;
  out.reserve(waypoints.size());
  for (const auto & x : waypoints) {
    out.push_back(labels_of(w, x));
  }
  return out;
}

std::string to_string(PlanDefect d)
{
  switch (d) {
    case PlanDefect::kNone: return "ok";
    case PlanDefect::kMalformed: return "malformed plan";
    case PlanDefect::kInitialInvalid: return "initial state invalid";
    case PlanDefect::kSegmentNotFree: return "segment not free";
    case PlanDefect::kTransitionInvalid: return "transition invalid";
    case PlanDefect::kSeparationViolated: return "separation violated";
    case PlanDefect::kLassoRejected: return "lasso rejected";
  }
  return "unknown";
}

PlanDiagnostics verify_plan(const Plan & plan, const Nba & nba, const Workspace & w)
{
  PlanDiagnostics diag;
  auto fail = [&diag](PlanDefect d, std::string msg, int step = -1, int robot = -1) {
    diag.defect = d;
    diag.message = std::move(msg);
    diag.step = step;
    diag.robot = robot;
    return diag;
  };
  const std::size_t dim = static_cast<std::size_t>(2 * w.n_robots());
  if (plan.prefix.empty()) {
    return fail(PlanDefect::kMalformed, "prefix is empty");
  }
  for (const auto * seq : {&plan.prefix, &plan.suffix}) {
    for (const auto & x : *seq) {
      if (x.size() != dim) {
        return fail(PlanDefect::kMalformed, "waypoint dimension does not match the robot count");
      }
      for (double v : x) {
        if (!std::isfinite(v)) {
          return fail(PlanDefect::kMalformed, "non-finite coordinate");
        }
      }
    }
  }
  if (!joint_state_valid(w, plan.prefix.front())) {
    return fail(PlanDefect::kInitialInvalid, "initial joint state is not free or not separated", 0);
  }

  std::vector<JointState> walk = plan.prefix;
  walk.insert(walk.end(), plan.suffix.begin(), plan.suffix.end());
  if (!plan.suffix.empty()) {
    walk.push_back(plan.prefix.back());
  }
  for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
    const int step = static_cast<int>(k);
    for (int i = 0; i < w.n_robots(); ++i) {
      const Vec2 p = robot_pos(walk[k], i);
      const Vec2 q = robot_pos(walk[k + 1], i);
      if (!segment_free(w, p, q)) {
        return fail(PlanDefect::kSegmentNotFree, "segment not free", step, i + 1);
      }
      if (!robot_transition_valid(w, p, q)) {
        return fail(PlanDefect::kTransitionInvalid, "segment crosses a region boundary more than once", step,
                    i + 1);
      }
    }
    if (!joint_state_valid(w, walk[k + 1])) {
      return fail(PlanDefect::kSeparationViolated, "separation violated", step);
    }
  }

  const std::vector<JointState> head(plan.prefix.begin(), plan.prefix.end() - 1);
  std::vector<JointState> loop{plan.prefix.back()};
  loop.insert(loop.end(), plan.suffix.begin(), plan.suffix.end());
  if (!accepts_lasso(nba, trace_of(w, head), trace_of(w, loop))) {
    return fail(PlanDefect::kLassoRejected, "lasso rejected");
  }
  return diag;
}

}  // namespace tlrrt
