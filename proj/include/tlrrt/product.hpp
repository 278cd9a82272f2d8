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

#ifndef TLRRT_PRODUCT_HPP_
#define TLRRT_PRODUCT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tlrrt/buchi.hpp"
#include "tlrrt/geometry.hpp"

namespace tlrrt
{

struct ProductState
{
  JointState x;
  int q = 0;
};

/// C(x, x'): Euclidean distance in the joint space.
double cost_c(const JointState & a, const JointState & b);
double path_cost(const std::vector<JointState> & waypoints);

/// Prefix-suffix plan. The suffix is stored as an open cycle y1..yS; the
/// executed loop is x_K, y1, ..., yS, x_K where x_K = prefix.back().
/// An empty suffix is the zero-cost loop that idles at x_K.
struct Plan
{
  std::vector<JointState> prefix;
  std::vector<JointState> suffix;
  std::vector<int> prefix_q;  // Buchi state of each prefix waypoint
  std::vector<int> suffix_q;
  double prefix_cost = 0.0;
  double suffix_cost = 0.0;  // includes the seam x_K->y1 and the closure yS->x_K
  double cost = 0.0;         // weighted total
  double weight = 0.2;
  std::uint64_t seed = 0;
  std::string params_json = "{}";  // echo of the planner configuration
};

/// Length of the closed loop x_K, y1, ..., yS, x_K.
double suffix_loop_cost(const Plan & plan);
/// J = w * prefix + (1 - w) * suffix loop.
double plan_cost(const Plan & plan, double w);
/// Recomputes the stored cost fields from the waypoints.
void refresh_costs(Plan & plan);

std::vector<LabelSet> trace_of(const Workspace & w, const std::vector<JointState> & waypoints);

enum class PlanDefect {
  kNone,
  kMalformed,
  kInitialInvalid,
  kSegmentNotFree,
  kTransitionInvalid,
  kSeparationViolated,
  kLassoRejected,
};

std::string to_string(PlanDefect d);

struct PlanDiagnostics
{
  PlanDefect defect = PlanDefect::kNone;
  std::string message;
  int step = -1;   // index of the failing transition along prefix, seam, suffix, closure
  int robot = -1;  // 1-based robot index where relevant

  bool ok() const { return defect == PlanDefect::kNone; }
};

/// Checks every transition (including seam and closure) and lasso acceptance
/// of the induced trace. Reports the first failing check.
PlanDiagnostics verify_plan(const Plan & plan, const Nba & nba, const Workspace & w);

}  // namespace tlrrt

#endif  // TLRRT_PRODUCT_HPP_
