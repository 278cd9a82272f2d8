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

#ifndef TLRRT_RRT_HPP_
#define TLRRT_RRT_HPP_

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tlrrt/buchi.hpp"
#include "tlrrt/geometry.hpp"
#include "tlrrt/product.hpp"
#include "tlrrt/rng.hpp"

namespace tlrrt
{

/// Exact nearest / radius queries over points in R^dim. Insert-only.
class KdTree
{
public:
  explicit KdTree(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<double> & point(int id) const { return points_.at(static_cast<std::size_t>(id)); }

  /// Returns the id of the inserted point (ids are 0, 1, 2, ...).
  int insert(std::vector<double> p);
  /// Closest point; ties go to the lowest id. -1 when empty.
  int nearest(const std::vector<double> & q) const;
  /// All ids with distance <= r, ascending.
  std::vector<int> within(const std::vector<double> & q, double r) const;
  /// Id of a point exactly equal to q, or -1.
  int find(const std::vector<double> & q) const;

private:
  struct Node
  {
    int point = -1;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int dim_;
  std::vector<std::vector<double>> points_;
  std::vector<Node> nodes_;
};

double squared_distance(const std::vector<double> & a, const std::vector<double> & b);

struct TreeNode
{
  ProductState state;
  int parent = 0;  // the root is its own parent
  double cost = 0.0;
  int position_class = 0;
  std::vector<int> children;
};

/// Product-space tree. Nodes sharing a joint position form a position class;
/// the spatial index is keyed by class.
class Tree
{
public:
  Tree(const Workspace & w, const Nba & nba, ProductState root);

  const Workspace & workspace() const { return *w_; }
  const Nba & nba() const { return *nba_; }

  int size() const { return static_cast<int>(nodes_.size()); }
  const TreeNode & node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const std::vector<TreeNode> & nodes() const { return nodes_; }

  /// |[V]~|: number of distinct joint positions.
  std::size_t class_count() const { return index_.size(); }
  const JointState & class_position(int c) const { return index_.point(c); }
  const std::vector<int> & class_members(int c) const { return members_.at(static_cast<std::size_t>(c)); }
  const LabelSet & class_labels(int c) const { return labels_.at(static_cast<std::size_t>(c)); }

  /// Buchi successors enabled at the node: step(q, L(x)).
  const std::vector<int> & successors(int id) const { return succ_.at(static_cast<std::size_t>(id)); }

  int find_class(const JointState & x) const { return index_.find(x); }
  std::optional<int> find(int position_class, int q) const;
  int nearest_class(const JointState & x) const { return index_.nearest(x); }
  std::vector<int> near_classes(const JointState & x, double r) const { return index_.within(x, r); }

  int add(const JointState & x, int q, int parent, double cost);
  /// Moves id under parent with the given cost and shifts every descendant
  /// by the same amount. The root cannot be reparented.
  void reparent(int id, int parent, double cost);

  /// Root-to-node sequence of states.
  std::vector<ProductState> path_to(int id) const;

  /// Node ids whose incoming edge was created or changed since the last call.
  std::vector<int> take_dirty();

private:
  const Workspace * w_;
  const Nba * nba_;
  std::vector<TreeNode> nodes_;
  std::vector<std::vector<int>> succ_;
  KdTree index_;
  std::vector<std::vector<int>> members_;
  std::vector<LabelSet> labels_;
  std::map<std::pair<int, int>, int> by_class_q_;
  std::vector<int> dirty_;
};

/// Rejection-samples every robot uniformly from the free workspace. Joint
/// separation is not enforced here.
JointState sample_uniform(const Workspace & w, Rng & rng);
Vec2 sample_free_point(const Workspace & w, Rng & rng);

/// Moves from `from` toward `to` by at most eta.
JointState steer(const JointState & from, const JointState & to, double eta);

/// Volume of the unit ball in R^dim.
double unit_ball_volume(int dim);

enum class RadiusMode { kPractical, kOptimal, kZero };

std::string to_string(RadiusMode m);
RadiusMode radius_mode_from_string(const std::string & s);

struct RadiusSchedule
{
  RadiusMode mode = RadiusMode::kPractical;
  double eta = 0.25;
  double gamma = 0.0;
  int dim = 2;
  double theta = 0.24;
  double epsilon = 0.01;
  double kappa = 0.01;
  double cost_estimate = 0.0;

  /// Connection radius for k distinct positions in the tree.
  double radius(std::size_t k) const;

  /// gamma = ceil(4 (mu / zeta)^(1/dim)), exponent 1/dim.
  static RadiusSchedule practical(double free_measure, int dim, double eta);
  /// Lower bound of gamma from the optimality analysis, exponent 1/(dim+1).
  static RadiusSchedule optimal(double free_measure, int dim, double eta, double cost_estimate,
                                double theta = 0.24, double epsilon = 0.01, double kappa = 0.01);
  static RadiusSchedule zero(int dim, double eta);
};

/// Memoized joint_transition_valid between x_new and tree positions.
class SegmentCache
{
public:
  SegmentCache(const Tree & tree, JointState x_new);

  const JointState & x_new() const { return x_new_; }
  bool valid(int position_class);

private:
  const Tree * tree_;
  JointState x_new_;
  std::vector<signed char> memo_;
};

/// Best parent among `near` for (x_new, q_new); appends it and returns the id.
std::optional<int> extend(Tree & tree, int q_new, const std::vector<int> & near, SegmentCache & seg);

/// Reparents near nodes through `id_new` when that is strictly cheaper.
/// Returns the number of rewired nodes.
int rewire(Tree & tree, int id_new, const std::vector<int> & near, SegmentCache & seg);

/// One sweep over Buchi states at x_new; returns ids of inserted nodes.
std::vector<int> insert_product_states(Tree & tree, const JointState & x_new, const std::vector<int> & near);

/// Nodes of the given position classes, ascending.
std::vector<int> nodes_of_classes(const Tree & tree, const std::vector<int> & classes);

bool prefix_goal(const Nba & nba, const ProductState & q);
/// A transition from q back to the root is enabled and collision free.
bool suffix_goal(const Workspace & w, const Nba & nba, const ProductState & q, const ProductState & root);

/// States from the root to `id` (parent trace reversed).
std::vector<ProductState> find_plan(const Tree & tree, int id);

struct InvariantReport
{
  long checks = 0;
  long violations = 0;
  std::vector<std::string> messages;  // first few violations
};

/// Periodic checks of acyclicity, cost consistency, edge validity and cost
/// monotonicity.
class InvariantChecker
{
public:
  void check(Tree & tree);
  const InvariantReport & report() const { return report_; }

private:
  void fail(const std::string & msg);

  InvariantReport report_;
  std::vector<double> last_cost_;
};

class SamplerAbort : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct TreeStats
{
  long iterations = 0;
  int nodes = 1;
  std::size_t classes = 1;
  int goal_nodes = 0;
  long first_goal_iteration = -1;
  long sampler_skips = 0;
  long geodesic_fallbacks = 0;
  double seconds = 0.0;
};

using GoalPredicate = std::function<bool(const Tree &, int)>;
using Deadline = std::optional<std::chrono::steady_clock::time_point>;

struct GrowOptions
{
  long n_max = 1000;
  bool stop_at_first_goal = false;
  Deadline deadline;
  int check_every = 100;  // 0 disables the invariant checker
};

/// Unbiased tree growth (uniform sampling, nearest, steer, near, sweep).
class UniformGrower
{
public:
  UniformGrower(Tree & tree, RadiusSchedule schedule, Rng rng);

  /// One iteration; returns ids of inserted nodes.
  std::vector<int> iterate();

private:
  Tree * tree_;
  RadiusSchedule schedule_;
  Rng rng_;
};

struct GrowResult
{
  std::vector<int> goals;  // ascending node ids
  TreeStats stats;
};

/// Runs `step` up to n_max times, tracking goal nodes, invariants and time.
GrowResult grow_tree(Tree & tree, const std::function<std::vector<int>()> & step, const GoalPredicate & goal,
                     const GrowOptions & opt, InvariantChecker * checker);

}  // namespace tlrrt

#endif  // TLRRT_RRT_HPP_
