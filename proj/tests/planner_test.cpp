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


#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "tlrrt/benchmark.hpp"
#include "tlrrt/io.hpp"
#include "tlrrt/planner.hpp"
#include "tlrrt/scenario.hpp"
#include "tlrrt/svg.hpp"

using namespace tlrrt;

namespace
{

int count_of(const std::string & s, const std::string & needle)
{
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

PlannerParams quick(PlannerMode mode, std::uint64_t seed)
{
  PlannerParams p;
  p.mode = mode;
  p.n_max_pre = 300;
  p.n_max_suf = 300;
  p.seed = seed;
  p.check_every = 10;
  return p;
}

}  // namespace

TEST_CASE("planner parameters JSON")
{
  PlannerParams p;
  p.mode = PlannerMode::kBiased;
  p.radius_mode = RadiusMode::kOptimal;
  p.n_max_pre = 1234;
  p.w = 0.35;
  p.cost_estimate_pre = 0.75;
  p.bias.p_ug = 0.25;
  p.bias.clause_mode = ClauseMode::kMinLength;
  p.cycle_close.iterations = 77;
  p.seed = 99;
  const auto j = params_to_json(p);
  const PlannerParams back = params_from_json(j);
  CHECK(params_to_json(back).dump() == j.dump());
  CHECK(back.mode == PlannerMode::kBiased);
  CHECK(back.cost_estimate_pre == 0.75);
  CHECK_FALSE(back.cost_estimate_suf.has_value());
  CHECK(back.bias.p_ug == 0.25);

  // Overlay keeps what the document does not mention.
  const PlannerParams over = params_from_json(nlohmann::json::parse(R"({"w": 0.5, "bias": {"y_rand": 0.9}})"), p);
  CHECK(over.w == 0.5);
  CHECK(over.n_max_pre == 1234);
  CHECK(over.bias.y_rand == 0.9);
  CHECK(over.bias.p_ug == 0.25);

  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"wieght": 0.5})")), std::invalid_argument);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"w": "high"})")), std::invalid_argument);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse("[1]")), std::invalid_argument);
  PlannerParams bad;
  bad.w = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.theta = 0.3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK(PlannerParams{}.effective_eta(2) == 0.5);
  CHECK(planner_mode_from_string("biased") == PlannerMode::kBiased);
  CHECK_THROWS_AS(planner_mode_from_string("greedy"), std::invalid_argument);
}

TEST_CASE("unbiased planning on case 1")
{
  const Scenario s = case1();
  const Nba nba = ltl_to_nba(parse_ltl(s.task.formula));
  const JointState x0 = initial_state(s.task);
  PlannerParams p = quick(PlannerMode::kUnbiased, 5);
  p.n_max_pre = 1000;
  const auto a = plan(s.workspace, nba, x0, p);
  REQUIRE(a.status == PlanStatus::kOk);
  REQUIRE(a.plan.has_value());
  CHECK(verify_plan(*a.plan, nba, s.workspace).ok());
  CHECK(a.plan->prefix.front() == x0);
  CHECK(a.plan->cost == doctest::Approx(plan_cost(*a.plan, 0.2)));
  CHECK(a.plan->cost == doctest::Approx(0.2 * path_cost(a.plan->prefix) + 0.8 * suffix_loop_cost(*a.plan)));
  CHECK(a.stats.invariant_checks > 0);
  CHECK(a.stats.invariant_violations == 0);
  CHECK(a.stats.n_goal > 0);
  CHECK(a.stats.iterations_to_first_plan > 0);
  CHECK(a.stats.iterations_to_first_plan <= a.stats.prefix_iterations + a.stats.suffix_iterations);

  const auto b = plan(s.workspace, nba, x0, p);
  REQUIRE(b.plan.has_value());
  CHECK(plan_to_string(*a.plan) == plan_to_string(*b.plan));
}

TEST_CASE("biased planning on case 2")
{
  const Scenario s = case2();
  const Nba nba = ltl_to_nba(parse_ltl(s.task.formula));
  const JointState x0 = initial_state(s.task);
  PlannerParams p = quick(PlannerMode::kBiased, 3);
  p.first_feasible = true;
  p.n_max_pre = 5000;
  p.n_max_suf = 5000;
  const auto a = plan(s.workspace, nba, x0, p);
  REQUIRE(a.status == PlanStatus::kOk);
  CHECK(verify_plan(*a.plan, nba, s.workspace).ok());
  CHECK(a.stats.invariant_violations == 0);
  const auto b = plan(s.workspace, nba, x0, p);
  CHECK(plan_to_string(*a.plan) == plan_to_string(*b.plan));
}

TEST_CASE("trivial and infeasible tasks")
{
  const Workspace w = fixtures::small_workspace();
  const JointState x0{0.3, 0.3};
  for (PlannerMode m : {PlannerMode::kUnbiased, PlannerMode::kBiased}) {
    const Nba t = ltl_to_nba(parse_ltl("true"));
    const auto r = plan(w, t, x0, quick(m, 1));
    REQUIRE(r.status == PlanStatus::kOk);
    CHECK(verify_plan(*r.plan, t, w).ok());
    CHECK(r.plan->cost == doctest::Approx(0.0));

    // The root already sits in an accepting state with an idle loop.
    const Nba stay = ltl_to_nba(parse_ltl("[] !pi(1,1)"));
    const auto r2 = plan(w, stay, x0, quick(m, 1));
    REQUIRE(r2.status == PlanStatus::kOk);
    CHECK(verify_plan(*r2.plan, stay, w).ok());
    CHECK(r2.plan->suffix_cost == doctest::Approx(0.0));

    const Nba never = ltl_to_nba(parse_ltl("[] pi(1,1) && [] !pi(1,1)"));
    const auto r3 = plan(w, never, x0, quick(m, 1));
    CHECK(r3.status == PlanStatus::kInfeasibleNba);
    CHECK_FALSE(r3.plan.has_value());
  }
  CHECK_THROWS_AS(plan(w, ltl_to_nba(parse_ltl("true")), {0.3, 0.3, 0.5, 0.1}, quick(PlannerMode::kUnbiased, 1)),
                  std::invalid_argument);
}

TEST_CASE("benchmark aggregation")
{
  const Summary one = summarize({2.0});
  CHECK(one.count == 1);
  CHECK(one.stddev == 0.0);
  const Summary three = summarize({1.0, 2.0, 3.0});
  CHECK(three.mean == doctest::Approx(2.0));
  CHECK(three.stddev == doctest::Approx(1.0));
  CHECK(summarize({}).count == 0);
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) == trial_seed(1, 0));

  const Scenario s = case1();
  const Nba nba = ltl_to_nba(parse_ltl(s.task.formula));
  PlannerParams p = quick(PlannerMode::kUnbiased, 0);
  p.n_max_pre = 150;
  p.n_max_suf = 150;
  const auto r1 = run_benchmark(s.workspace, nba, initial_state(s.task), p, 4, 11, 1);
  const auto r4 = run_benchmark(s.workspace, nba, initial_state(s.task), p, 4, 11, 4);
  CHECK(report_csv(r1) == report_csv(r4));
  REQUIRE(r1.rows.size() == 4);
  std::vector<double> costs;
  for (const auto & row : r1.rows) {
    if (row.status == PlanStatus::kOk) {
      costs.push_back(row.cost);
    }
    CHECK(row.invariant_violations == 0);
  }
  CHECK(r1.failures == 4 - static_cast<int>(costs.size()));
  CHECK(r1.cost.mean == doctest::Approx(summarize(costs).mean));
  const std::string csv = report_csv(r1);
  CHECK(csv.rfind("trial,seed,status,J,prefix_cost,suffix_cost,n_goal,iterations_to_first_plan,nodes\n", 0) == 0);
  CHECK(count_of(csv, "\n") == 5);
  CHECK(timings_csv(r1).rfind("trial,seed,seconds,seconds_to_first_plan\n", 0) == 0);
  CHECK_FALSE(report_summary(r1).empty());
}

TEST_CASE("svg rendering")
{
  const Scenario s = case2();
  const std::string env = render_svg(s.workspace, nullptr);
  CHECK(count_of(env, "<polygon class=\"obstacle\"") == 2);
  CHECK(count_of(env, "<polygon class=\"region\"") == 6);
  CHECK(count_of(env, "<polyline") == 0);

  Plan p;
  p.prefix = {initial_state(s.task), {0.7, 0.2, 0.72, 0.2}};
  p.suffix = {{0.7, 0.3, 0.72, 0.3}};
  refresh_costs(p);
  const std::string a = render_svg(s.workspace, &p);
  CHECK(a == render_svg(s.workspace, &p));
  CHECK(count_of(a, "<polyline class=\"prefix\"") == 2);
  CHECK(count_of(a, "<polyline class=\"suffix\"") == 2);
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  p.suffix.clear();
  CHECK(count_of(render_svg(s.workspace, &p), "<polyline class=\"suffix\"") == 0);
}

TEST_CASE("scenarios")
{
  const Scenario c1 = case1();
  CHECK(c1.workspace.n_robots() == 1);
  CHECK(c1.workspace.n_regions() == 6);
  for (const auto & r : c1.workspace.regions()) {
    CHECK(std::abs(signed_area(r.polygon)) == doctest::Approx(0.01125));
  }
  CHECK(initial_state(c1.task) == JointState{0.8, 0.1});
  const Scenario c2 = case2();
  for (const auto & r : c2.workspace.regions()) {
    CHECK(std::abs(signed_area(r.polygon)) == doctest::Approx(0.03125));
  }

  for (int n : {2, 4, 8}) {
    const Scenario a = scatter(n, 2, 17);
    const Scenario b = scatter(n, 2, 17);
    CHECK(task_to_json(a.task).dump() == task_to_json(b.task).dump());
    CHECK(workspace_to_json(a.workspace).dump() == workspace_to_json(b.workspace).dump());
    CHECK(a.task.subformulas.size() == 8);
    // Every robot shows up somewhere in the task.
    const auto f = parse_ltl(a.task.formula);
    std::set<int> robots;
    for (const auto & ap : atoms_of(f)) {
      robots.insert(ap.robot);
    }
    CHECK(static_cast<int>(robots.size()) == n);
    const JointState x0 = initial_state(a.task);
    CHECK(joint_state_valid(a.workspace, x0));
    CHECK(labels_of(a.workspace, x0).empty());
  }
  CHECK(task_to_json(scatter(4, 1, 1).task).dump() != task_to_json(scatter(4, 1, 2).task).dump());
}
