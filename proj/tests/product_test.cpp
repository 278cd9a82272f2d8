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

#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "tlrrt/io.hpp"
#include "tlrrt/product.hpp"
#include "tlrrt/scenario.hpp"

using namespace tlrrt;

namespace
{

JointState midpoint(const JointState & a, const JointState & b)
{
  JointState m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    m[i] = 0.5 * (a[i] + b[i]);
  }
  return m;
}

/// Inserts the midpoint of every consecutive pair.
std::vector<JointState> refine(const std::vector<JointState> & xs)
{
  std::vector<JointState> out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k > 0) {
      out.push_back(midpoint(xs[k - 1], xs[k]));
    }
    out.push_back(xs[k]);
  }
  return out;
}

// Robot 1 walks into region 1 and loops out to region 2 and back.
Plan tour()
{
  Plan p;
  p.prefix = {{0.3, 0.15}, {0.15, 0.15}};
  p.suffix = {{0.3, 0.15}, {0.85, 0.3}, {0.85, 0.85}, {0.85, 0.95}, {0.3, 0.95}, {0.3, 0.2}};
  p.prefix_q = {0, 0};
  p.suffix_q = {0, 0, 0, 0, 0, 0};
  p.weight = 0.2;
  p.seed = 42;
  refresh_costs(p);
  return p;
}

}  // namespace

TEST_CASE("cost_c and path_cost")
{
  CHECK(cost_c({0.2, 0.3}, {0.2, 0.3}) == 0.0);
  CHECK(cost_c({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(cost_c({0, 0, 1, 1}, {1, 0, 2, 1}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(path_cost({{0.1, 0.2}}) == 0.0);
  CHECK(path_cost({{0, 0}, {0.3, 0.4}, {0, 0}}) == doctest::Approx(1.0));
  const std::vector<JointState> xs{{0, 0, 0.5, 0.5}, {0.2, 0.1, 0.4, 0.9}, {0.7, 0.3, 0.1, 0.2}};
  CHECK(path_cost(refine(refine(xs))) == doctest::Approx(path_cost(xs)).epsilon(1e-12));
}

TEST_CASE("plan_cost weights prefix and suffix loop")
{
  Plan p;
  p.prefix = {{0.0, 0.0}, {1.0, 0.0}};
  p.suffix = {{1.25, 0.0}};
  CHECK(suffix_loop_cost(p) == doctest::Approx(0.5));
  CHECK(plan_cost(p, 0.2) == doctest::Approx(0.6));
  CHECK(plan_cost(p, 1.0) == doctest::Approx(1.0));
  p.suffix.clear();
  CHECK(suffix_loop_cost(p) == 0.0);
  CHECK(plan_cost(p, 0.2) == doctest::Approx(0.2));

  Plan t = tour();
  const double j = t.cost;
  t.prefix = refine(t.prefix);
  t.prefix_q.assign(t.prefix.size(), 0);
  refresh_costs(t);
  CHECK(t.cost == doctest::Approx(j).epsilon(1e-12));
}

TEST_CASE("trace_of")
{
  const Workspace w = fixtures::small_workspace(2);
  CHECK(trace_of(w, {{0.3, 0.3, 0.7, 0.3}, {0.3, 0.35, 0.7, 0.35}}) == std::vector<LabelSet>{{}, {}});
  const auto tr = trace_of(w, {{0.3, 0.3, 0.7, 0.3}, {0.15, 0.15, 0.7, 0.3}, {0.15, 0.15, 0.7, 0.3}});
  REQUIRE(tr.size() == 3);
  CHECK(tr[1] == LabelSet{{1, 1}});
  CHECK(tr[2] == LabelSet{{1, 1}});
}

TEST_CASE("verify_plan accepts a correct tour and refinements of it")
{
  const Workspace w = fixtures::small_workspace();
  const Nba nba = ltl_to_nba(parse_ltl("<> pi(1,1) && []<> pi(1,2) && []<> !pi(1,2)"));
  Plan p = tour();
  CHECK(verify_plan(p, nba, w).ok());
  p.prefix = refine(p.prefix);
  p.suffix = refine(p.suffix);
  CHECK(verify_plan(p, nba, w).ok());
}

TEST_CASE("verify_plan diagnostics")
{
  const Workspace w = fixtures::small_workspace();
  const Nba nba = ltl_to_nba(parse_ltl("<> pi(1,1) && []<> pi(1,2) && []<> !pi(1,2)"));

  Plan blocked = tour();
  blocked.suffix[1] = {0.5, 0.5};
  const auto d1 = verify_plan(blocked, nba, w);
  CHECK(d1.defect == PlanDefect::kSegmentNotFree);
  CHECK(d1.message == "segment not free");
  CHECK(d1.robot == 1);

  Plan hop = tour();
  hop.prefix = {{0.05, 0.15}, {0.25, 0.15}, {0.15, 0.15}};
  CHECK(verify_plan(hop, nba, w).defect == PlanDefect::kTransitionInvalid);

  Plan lazy = tour();
  lazy.suffix = {{0.3, 0.15}};
  const auto d2 = verify_plan(lazy, nba, w);
  CHECK(d2.defect == PlanDefect::kLassoRejected);
  CHECK(d2.message == "lasso rejected");

  Plan bad = tour();
  bad.prefix.front() = {0.5, 0.5};
  CHECK(verify_plan(bad, nba, w).defect == PlanDefect::kInitialInvalid);

  Plan malformed = tour();
  malformed.suffix[0] = {0.3};
  CHECK(verify_plan(malformed, nba, w).defect == PlanDefect::kMalformed);
  malformed.prefix.clear();
  CHECK(verify_plan(malformed, nba, w).defect == PlanDefect::kMalformed);

  const Workspace w2 = fixtures::small_workspace(2);
  Plan crowd;
  crowd.prefix = {{0.3, 0.3, 0.7, 0.3}, {0.3, 0.3, 0.302, 0.3}};
  CHECK(verify_plan(crowd, ltl_to_nba(parse_ltl("true")), w2).defect == PlanDefect::kSeparationViolated);
}

TEST_CASE("plan JSON round trip is byte identical")
{
  Plan p = tour();
  p.params_json = R"({"mode":"biased","seed":42})";
  const std::string a = plan_to_string(p);
  const Plan q = plan_from_json(parse_json(a, "plan"));
  CHECK(plan_to_string(q) == a);
  CHECK(q.prefix == p.prefix);
  CHECK(q.suffix == p.suffix);
  CHECK(q.cost == p.cost);
  CHECK(q.seed == p.seed);

  // Awkward doubles survive.
  p.prefix[0] = {0.1 + 0.2, 1.0 / 3.0};
  const std::string b = plan_to_string(p);
  CHECK(plan_to_string(plan_from_json(parse_json(b, "plan"))) == b);
}

TEST_CASE("workspace and task JSON round trip")
{
  const Scenario s = case2();
  const auto j = workspace_to_json(s.workspace);
  const Workspace back = workspace_from_json(j);
  CHECK(workspace_to_json(back).dump() == j.dump());
  CHECK(back.n_robots() == 2);
  CHECK(back.n_regions() == 6);
  const auto t = task_to_json(s.task);
  CHECK(task_to_json(task_from_json(t)).dump() == t.dump());
  CHECK(initial_state(s.task) == JointState{0.8, 0.1, 0.82, 0.1});
}

TEST_CASE("malformed input files are config errors")
{
  CHECK_THROWS_AS(parse_json("{", "x"), ConfigError);
  CHECK_THROWS_AS(workspace_from_json(nlohmann::json::parse(R"({"bounds": [0, 0, 1]})")), ConfigError);
  CHECK_THROWS_AS(task_from_json(nlohmann::json::parse(R"({"initial": [[0.1, 0.1]]})")), ConfigError);
  CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"prefix": 3})")), ConfigError);
  CHECK_THROWS_AS(read_file("/nonexistent/file.json"), ConfigError);
}
