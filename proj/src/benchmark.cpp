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

#include "tlrrt/benchmark.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace tlrrt
{

namespace
{

std::string fmt(const char * f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

Summary summarize(const std::vector<double> & values)
{
  Summary s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) {
    return s;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  s.mean = sum / s.count;
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) {
      ss += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(ss / (s.count - 1));
  }
  return s;
}

std::uint64_t trial_seed(std::uint64_t master, int trial)
{
  return make_rng(master, RngSite::kTrial, static_cast<std::uint64_t>(trial)).next();
}

BenchmarkReport run_benchmark(const Workspace & w, const Nba & nba, const JointState & x0,
                              const PlannerParams & params, int trials, std::uint64_t master_seed, int jobs)
{
  BenchmarkReport rep;
  rep.rows.resize(static_cast<std::size_t>(std::max(trials, 0)));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (int k = next++; k < trials; k = next++) {
      try {
        PlannerParams p = params;
        p.seed = trial_seed(master_seed, k);
        const PlanResult r = plan(w, nba, x0, p);
        TrialRow & row = rep.rows[static_cast<std::size_t>(k)];
        row.trial = k;
        row.seed = p.seed;
        row.status = r.status;
        if (r.plan) {
          row.cost = r.plan->cost;
          row.prefix_cost = r.plan->prefix_cost;
          row.suffix_cost = r.plan->suffix_cost;
        }
        row.n_goal = r.stats.n_goal;
        row.iterations_to_first_plan = r.stats.iterations_to_first_plan;
        row.nodes = r.stats.prefix_nodes;
        row.seconds = r.stats.seconds;
        row.seconds_to_first_plan = r.stats.seconds_to_first_plan;
        row.invariant_violations = r.stats.invariant_violations;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) {
          error = std::current_exception();
        }
      }
    }
  };
  const int n_jobs = std::max(1, std::min(jobs, trials));
  if (n_jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < n_jobs; ++j) {
      pool.emplace_back(worker);
    }
    for (auto & t : pool) {
      t.join();
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  std::vector<double> costs;
  std::vector<double> goals;
  std::vector<double> secs;
  std::vector<double> first;
  for (const auto & row : rep.rows) {
    goals.push_back(row.n_goal);
    secs.push_back(row.seconds);
    if (row.status == PlanStatus::kOk) {
      costs.push_back(row.cost);
      first.push_back(row.seconds_to_first_plan);
    } else {
      ++rep.failures;
    }
  }
  rep.cost = summarize(costs);
  rep.n_goal = summarize(goals);
  rep.seconds = summarize(secs);
  rep.first_plan_seconds = summarize(first);
  return rep;
}

std::string report_csv(const BenchmarkReport & r)
{
  std::string out = "trial,seed,status,J,prefix_cost,suffix_cost,n_goal,iterations_to_first_plan,nodes\n";
  for (const auto & row : r.rows) {
    const bool ok = row.status == PlanStatus::kOk;
    out += std::to_string(row.trial) + "," + std::to_string(row.seed) + "," + to_string(row.status) + ",";
    out += ok ? fmt("%.9f", row.cost) + "," + fmt("%.9f", row.prefix_cost) + "," + fmt("%.9f", row.suffix_cost)
              : std::string(",,");
    out += "," + std::to_string(row.n_goal) + "," + std::to_string(row.iterations_to_first_plan) + "," +
           std::to_string(row.nodes) + "\n";
  }
  return out;
}

std::string timings_csv(const BenchmarkReport & r)
{
  std::string out = "trial,seed,seconds,seconds_to_first_plan\n";
  for (const auto & row : r.rows) {
    out += std::to_string(row.trial) + "," + std::to_string(row.seed) + "," + fmt("%.6f", row.seconds) + "," +
           fmt("%.6f", row.seconds_to_first_plan) + "\n";
  }
  return out;
}

std::string report_summary(const BenchmarkReport & r)
{
  std::string out;
  out += "trials: " + std::to_string(r.rows.size()) + "  failed: " + std::to_string(r.failures) + "\n";
  out += "J: " + fmt("%.4f", r.cost.mean) + " +- " + fmt("%.4f", r.cost.stddev) + "\n";
  out += "|P|: " + fmt("%.2f", r.n_goal.mean) + " +- " + fmt("%.2f", r.n_goal.stddev) + "\n";
  out += "runtime (s): " + fmt("%.3f", r.seconds.mean) + " +- " + fmt("%.3f", r.seconds.stddev) + "\n";
  out += "time to first plan (s): " + fmt("%.3f", r.first_plan_seconds.mean) + " +- " +
         fmt("%.3f", r.first_plan_seconds.stddev) + "\n";
  return out;
}

}  // namespace tlrrt
