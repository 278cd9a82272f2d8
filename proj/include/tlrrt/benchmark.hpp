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

#ifndef TLRRT_BENCHMARK_HPP_
#define TLRRT_BENCHMARK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tlrrt/planner.hpp"

namespace tlrrt
{

struct TrialRow
{
  int trial = 0;
  std::uint64_t seed = 0;
  PlanStatus status = PlanStatus::kNoPlan;
  double cost = 0.0;
  double prefix_cost = 0.0;
  double suffix_cost = 0.0;
  int n_goal = 0;
  long iterations_to_first_plan = -1;
  int nodes = 0;
  double seconds = 0.0;
  double seconds_to_first_plan = -1.0;
  long invariant_violations = 0;
};

struct Summary
{
  int count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
};

Summary summarize(const std::vector<double> & values);

struct BenchmarkReport
{
  std::vector<TrialRow> rows;
  int failures = 0;
  Summary cost;           // successful trials
  Summary n_goal;         // all trials
  Summary seconds;        // all trials
  Summary first_plan_seconds;  // successful trials
};

/// Seed of trial k derived from the master seed.
std::uint64_t trial_seed(std::uint64_t master, int trial);

/// Runs `trials` independent plans; rows come back in trial order whatever
/// the job count.
BenchmarkReport run_benchmark(const Workspace & w, const Nba & nba, const JointState & x0,
                              const PlannerParams & params, int trials, std::uint64_t master_seed, int jobs = 1);

/// Deterministic columns:
/// trial,seed,status,J,prefix_cost,suffix_cost,n_goal,iterations_to_first_plan,nodes
std::string report_csv(const BenchmarkReport & r);
/// trial,seed,seconds,seconds_to_first_plan
std::string timings_csv(const BenchmarkReport & r);
std::string report_summary(const BenchmarkReport & r);

}  // namespace tlrrt

#endif  // TLRRT_BENCHMARK_HPP_
