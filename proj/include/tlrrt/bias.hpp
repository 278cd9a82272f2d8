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

#ifndef TLRRT_BIAS_HPP_
#define TLRRT_BIAS_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlrrt/buchi.hpp"
#include "tlrrt/geometry.hpp"
#include "tlrrt/rng.hpp"
#include "tlrrt/rrt.hpp"

namespace tlrrt
{

enum class ClauseMode { kRandom, kMinLength };

std::string to_string(ClauseMode m);
ClauseMode clause_mode_from_string(const std::string & s);

struct BiasParams
{
  double p_closest = 0.9;
  double p_idle = 1.0;
  double y_rand = 0.99;
  double mu_d = 0.0;
  double sigma_d = 1.0 / 3.0;
  double mu_alpha = 0.0;
  double sigma_alpha = M_PI / 108.0;
  /// Fixed UG parameter. Unset: 1/|D_min| inside D_min and 1/|V \ D_min| outside.
  std::optional<double> p_ug;
  ClauseMode clause_mode = ClauseMode::kRandom;
  int gaussian_redraws = 50;

  /// Throws std::invalid_argument when a value is out of range.
  void validate() const;
};

/// P(rank = i) of the uniform-geometric distribution with parameter p.
double ug_pmf(long i, double p);

/// Rank in [1, n] drawn from the UG pmf truncated to n and renormalized.
long ug_sample_finite(long n, double p, Rng & rng);

/// Nodes whose Buchi distance to the target is minimal. Nodes are added in
/// insertion order; the set resets whenever a strictly smaller value shows up.
class DminTracker
{
public:
  /// metric[q] is the distance used for Buchi state q.
  explicit DminTracker(std::vector<int> metric) : metric_(std::move(metric)) {}

  /// Feeds every tree node not seen yet.
  void update(const Tree & tree);

  int value() const { return value_; }
  /// Ascending node ids (oldest first).
  const std::vector<int> & members() const { return members_; }
  const std::vector<int> & others() const { return others_; }

private:
  std::vector<int> metric_;
  int value_ = DistanceTable::kInf;
  int seen_ = 0;
  std::vector<int> members_;
  std::vector<int> others_;
};

/// Node id per Eq. (9): D_min with probability p_closest, the rest otherwise,
/// each ranked newest first and drawn from the UG distribution.
int sample_closest(const DminTracker & dmin, const BiasParams & params, Rng & rng);

/// Distance toward q_target used for selection: cycle length at the target,
/// hop distance elsewhere.
int distance_from(const DistanceTable & dist, int q, int q_target);

/// Two-hop progress (succ1, succ2) from a node toward q_target.
std::optional<std::pair<int, int>> select_successors(const Nba & nba, const DistanceTable & dist, int q_target,
                                                     int q_closest, const LabelSet & labels, Rng & rng);

/// Clause of a guard in disjunctive normal form.
DnfClause select_clause(const Dnf & dnf, ClauseMode mode, Rng & rng);

/// Target region label per robot, absent for unconstrained robots.
std::vector<std::optional<int>> region_assignment(const DnfClause & sigma, int n_robots);

struct BiasCounters
{
  long skips = 0;               // iterations without a successor pair
  long geodesic_fallbacks = 0;  // robots sampled uniformly because no path exists
  long gaussian_fallbacks = 0;  // Gaussian draws exhausted the redraw budget
  long uniform_draws = 0;       // Y > y_rand branch
  long gaussian_draws = 0;
  long idle_draws = 0;
};

struct BiasedSample
{
  JointState x_rand;
  int closest = 0;
};

/// Biased tree growth toward one feasible accepting Buchi state.
class BiasedSampler
{
public:
  BiasedSampler(const Tree & tree, const DistanceTable & dist, int q_target, bool suffix_metric,
                BiasParams params, const VisibilityGraph & vis, std::uint64_t seed, std::uint64_t salt);

  std::optional<BiasedSample> sample();
  const BiasCounters & counters() const { return counters_; }
  const DminTracker & dmin() const { return dmin_; }

private:
  Vec2 robot_sample(int robot, Vec2 from, const std::optional<int> & region);

  const Tree * tree_;
  const DistanceTable * dist_;
  int q_target_;
  BiasParams params_;
  const VisibilityGraph * vis_;
  Rng select_rng_;
  Rng geo_rng_;
  DminTracker dmin_;
  BiasCounters counters_;
};

class BiasedGrower
{
public:
  BiasedGrower(Tree & tree, BiasedSampler & sampler, RadiusSchedule schedule);

  std::vector<int> iterate();

private:
  Tree * tree_;
  BiasedSampler * sampler_;
  RadiusSchedule schedule_;
};

struct CycleCloseParams
{
  int iterations = 1000;
  double eta = 0.2;
  double goal_bias = 0.05;
  /// Lets each robot pass through the regions holding its own endpoints;
  /// all other regions stay blocked.
  bool allow_endpoint_regions = false;
};

struct CycleCloseResult
{
  bool ok = false;
  std::string diagnostic;
  std::vector<std::vector<Vec2>> robot_paths;
  /// Joint waypoints from x_from to x_to inclusive; robots that finish
  /// early idle at their goal.
  std::vector<JointState> waypoints;
};

/// Per-robot RRT* from x_from to x_to treating obstacles and the interiors
/// of labeled regions as blocked. Endpoints inside a region fail unless
/// params.allow_endpoint_regions is set.
CycleCloseResult suffix_cycle_close(const Workspace & w, const JointState & x_from, const JointState & x_to,
                                    const CycleCloseParams & params, Rng & rng);

}  // namespace tlrrt

#endif  // TLRRT_BIAS_HPP_
