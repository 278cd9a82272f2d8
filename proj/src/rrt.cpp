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

#include "tlrrt/rrt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tlrrt
{

namespace
{

constexpr long kMaxRejections = 1000000;
constexpr std::size_t kMaxMessages = 8;

bool contains_sorted(const std::vector<int> & v, int x) { return std::binary_search(v.begin(), v.end(), x); }

}  // namespace

Tree::Tree(const Workspace & w, const Nba & nba, ProductState root)
    : w_(&w), nba_(&nba), index_(2 * w.n_robots())
{
  add(root.x, root.q, 0, 0.0);
  dirty_.clear();
}

std::optional<int> Tree::find(int position_class, int q) const
{
  const auto it = by_class_q_.find({position_class, q});
  if (it == by_class_q_.end()) {
    return std::nullopt;
  }
  return it->second;
}

int Tree::add(const JointState & x, int q, int parent, double cost)
{
  int cls = index_.find(x);
  if (cls < 0) {
    cls = index_.insert(x);
    members_.emplace_back();
    labels_.push_back(labels_of(*w_, x));
  }
  const int id = static_cast<int>(nodes_.size());
  TreeNode n;
  n.state = {x, q};
  n.parent = id == 0 ? 0 : parent;
  n.cost = cost;
  n.position_class = cls;
  nodes_.push_back(std::move(n));
  succ_.push_back(nba_->step(q, labels_[static_cast<std::size_t>(cls)]));
  members_[static_cast<std::size_t>(cls)].push_back(id);
  by_class_q_[{cls, q}] = id;
  if (id != 0) {
    nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
    dirty_.push_back(id);
  }
  return id;
}

void Tree::reparent(int id, int parent, double cost)
{
  if (id == 0) {
    throw std::logic_error("the root cannot be reparented");
  }
  auto & old_children = nodes_[static_cast<std::size_t>(node(id).parent)].children;
  old_children.erase(std::find(old_children.begin(), old_children.end(), id));
  nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
  nodes_[static_cast<std::size_t>(id)].parent = parent;
  nodes_[static_cast<std::size_t>(id)].cost = cost;
  dirty_.push_back(id);
  // Descendant costs are recomputed edge by edge so they match a fresh
  // root-path summation exactly.
  std::vector<int> work(node(id).children);
  while (!work.empty()) {
    const int c = work.back();
    work.pop_back();
    auto & cn = nodes_[static_cast<std::size_t>(c)];
    const auto & pn = nodes_[static_cast<std::size_t>(cn.parent)];
    cn.cost = pn.cost + cost_c(pn.state.x, cn.state.x);
    work.insert(work.end(), cn.children.begin(), cn.children.end());
  }
}

std::vector<ProductState> Tree::path_to(int id) const
{
  std::vector<ProductState> out;
  int cur = id;
  while (true) {
    out.push_back(node(cur).state);
    if (cur == 0) {
      break;
    }
    cur = node(cur).parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int> Tree::take_dirty()
{
  std::vector<int> out;
  out.swap(dirty_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vec2 sample_free_point(const Workspace & w, Rng & rng)
{
  const Bounds & b = w.bounds();
  for (long k = 0; k < kMaxRejections; ++k) {
    const double x = rng.uniform(b.xmin, b.xmax);
    const double y = rng.uniform(b.ymin, b.ymax);
    if (point_free(w, {x, y})) {
      return {x, y};
    }
  }
  throw SamplerAbort("no free point found after 1e6 uniform draws; is the workspace fully blocked?");
}

JointState sample_uniform(const Workspace & w, Rng & rng)
{
  JointState x(static_cast<std::size_t>(2 * w.n_robots()));
  for (int i = 0; i < w.n_robots(); ++i) {
    set_robot_pos(x, i, sample_free_point(w, rng));
  }
  return x;
}

JointState steer(const JointState & from, const JointState & to, double eta)
{
  const double d = cost_c(from, to);
  if (d <= eta) {
    return to;
  }
  JointState out(from.size());
  const double t = eta / d;
  for (std::size_t i = 0; i < from.size(); ++i) {
    out[i] = from[i] + t * (to[i] - from[i]);
  }
  return out;
}

double unit_ball_volume(int dim)
{
  const double h = 0.5 * dim;
  return std::pow(M_PI, h) / std::tgamma(h + 1.0);
}

std::string to_string(RadiusMode m)
{
  switch (m) {
    case RadiusMode::kPractical: return "practical";
    case RadiusMode::kOptimal: return "optimal";
    case RadiusMode::kZero: return "zero";
  }
  return "practical";
}

RadiusMode radius_mode_from_string(const std::string & s)
{
  if (s == "practical") {
    return RadiusMode::kPractical;
  }
  if (s == "optimal") {
    return RadiusMode::kOptimal;
  }
  if (s == "zero") {
    return RadiusMode::kZero;
  }
  throw std::invalid_argument("radius mode must be practical, optimal or zero, got '" + s + "'");
}

double RadiusSchedule::radius(std::size_t k) const
{
  if (mode == RadiusMode::kZero) {
    return 0.0;
  }
  if (k <= 1) {
    return eta;
  }
  const double kd = static_cast<double>(k);
  const double expo = mode == RadiusMode::kOptimal ? 1.0 / (dim + 1) : 1.0 / dim;
  return std::min(gamma * std::pow(std::log(kd) / kd, expo), eta);
}

RadiusSchedule RadiusSchedule::practical(double free_measure, int dim, double eta)
{
  RadiusSchedule s;
  s.mode = RadiusMode::kPractical;
  s.eta = eta;
  s.dim = dim;
  s.gamma = std::ceil(4.0 * std::pow(free_measure / unit_ball_volume(dim), 1.0 / dim));
  return s;
}

RadiusSchedule RadiusSchedule::optimal(double free_measure, int dim, double eta, double cost_estimate,
                                       double theta, double epsilon, double kappa)
{
  if (!(cost_estimate > 0.0)) {
    // Without a positive cost estimate the bound degenerates to zero.
    return practical(free_measure, dim, eta);
  }
  RadiusSchedule s;
  s.mode = RadiusMode::kOptimal;
  s.eta = eta;
  s.dim = dim;
  s.theta = theta;
  s.epsilon = epsilon;
  s.kappa = kappa;
  s.cost_estimate = cost_estimate;
  const double inner = (1.0 + epsilon / 4.0) * cost_estimate / ((dim + 1) * theta * (1.0 - kappa)) *
                       (free_measure / unit_ball_volume(dim));
  s.gamma = (2.0 + theta) * std::pow(inner, 1.0 / (dim + 1));
  return s;
}

RadiusSchedule RadiusSchedule::zero(int dim, double eta)
{
  RadiusSchedule s;
  s.mode = RadiusMode::kZero;
  s.eta = eta;
  s.dim = dim;
  return s;
}

SegmentCache::SegmentCache(const Tree & tree, JointState x_new) : tree_(&tree), x_new_(std::move(x_new)) {}

bool SegmentCache::valid(int position_class)
{
  const auto c = static_cast<std::size_t>(position_class);
  if (c >= memo_.size()) {
    memo_.resize(std::max(c + 1, tree_->class_count()), -1);
  }
  if (memo_[c] < 0) {
    memo_[c] = joint_transition_valid(tree_->workspace(), tree_->class_position(position_class), x_new_) ? 1 : 0;
  }
  return memo_[c] == 1;
}

std::optional<int> extend(Tree & tree, int q_new, const std::vector<int> & near, SegmentCache & seg)
{
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int id : near) {
    const TreeNode & n = tree.node(id);
    if (!contains_sorted(tree.successors(id), q_new)) {
      continue;
    }
    const double c = n.cost + cost_c(n.state.x, seg.x_new());
    if (c < best_cost || (c == best_cost && id < best)) {
      if (!seg.valid(n.position_class)) {
        continue;
      }
      best = id;
      best_cost = c;
    }
  }
  if (best < 0) {
    return std::nullopt;
  }
  return tree.add(seg.x_new(), q_new, best, best_cost);
}

int rewire(Tree & tree, int id_new, const std::vector<int> & near, SegmentCache & seg)
{
  int count = 0;
  for (int id : near) {
    if (id == 0 || id == id_new) {
      continue;
    }
    const TreeNode & n = tree.node(id);
    if (!contains_sorted(tree.successors(id_new), n.state.q)) {
      continue;
    }
    const double c = tree.node(id_new).cost + cost_c(seg.x_new(), n.state.x);
    if (!(n.cost > c) || !seg.valid(n.position_class)) {
      continue;
    }
    tree.reparent(id, id_new, c);
    ++count;
  }
  return count;
}

std::vector<int> nodes_of_classes(const Tree & tree, const std::vector<int> & classes)
{
  std::vector<int> out;
  for (int c : classes) {
    const auto & m = tree.class_members(c);
    out.insert(out.end(), m.begin(), m.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> insert_product_states(Tree & tree, const JointState & x_new, const std::vector<int> & near)
{
  std::vector<int> candidates;
  for (int id : near) {
    const auto & s = tree.successors(id);
    candidates.insert(candidates.end(), s.begin(), s.end());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<int> added;
  SegmentCache seg(tree, x_new);
  int cls = tree.find_class(x_new);
  for (int b : candidates) {
    if (cls >= 0 && tree.find(cls, b)) {
      continue;
    }
    const auto id = extend(tree, b, near, seg);
    if (!id) {
      continue;
    }
    cls = tree.node(*id).position_class;
    rewire(tree, *id, near, seg);
    added.push_back(*id);
  }
  return added;
}

bool prefix_goal(const Nba & nba, const ProductState & q) { return nba.is_accepting(q.q); }

bool suffix_goal(const Workspace & w, const Nba & nba, const ProductState & q, const ProductState & root)
{
  const auto next = nba.step(q.q, labels_of(w, q.x));
  return contains_sorted(next, root.q) && joint_transition_valid(w, q.x, root.x);
}

std::vector<ProductState> find_plan(const Tree & tree, int id) { return tree.path_to(id); }

void InvariantChecker::fail(const std::string & msg)
{
  ++report_.violations;
  if (report_.messages.size() < kMaxMessages) {
    report_.messages.push_back(msg);
  }
}

void InvariantChecker::check(Tree & tree)
{
  ++report_.checks;
  const int n = tree.size();
  const auto & root = tree.node(0);
  if (root.parent != 0 || root.cost != 0.0) {
    fail("root must be its own parent with zero cost");
  }

  // Walk down from the root: every node must be reached exactly once, and
  // the recomputed root-path cost must match the stored one.
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<double> recomputed(static_cast<std::size_t>(n), 0.0);
  std::vector<int> work{0};
  seen[0] = 1;
  int visited = 1;
  while (!work.empty()) {
    const int p = work.back();
    work.pop_back();
    for (int c : tree.node(p).children) {
      if (tree.node(c).parent != p) {
        fail("child list disagrees with parent link at node " + std::to_string(c));
      }
      if (seen[static_cast<std::size_t>(c)]) {
        fail("node " + std::to_string(c) + " reached twice");
        continue;
      }
      seen[static_cast<std::size_t>(c)] = 1;
      ++visited;
      recomputed[static_cast<std::size_t>(c)] =
          recomputed[static_cast<std::size_t>(p)] + cost_c(tree.node(p).state.x, tree.node(c).state.x);
      work.push_back(c);
    }
  }
  if (visited != n) {
    fail("only " + std::to_string(visited) + " of " + std::to_string(n) + " nodes reach the root");
  }
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)] &&
        std::abs(recomputed[static_cast<std::size_t>(i)] - tree.node(i).cost) > 1e-9) {
      fail("stored cost of node " + std::to_string(i) + " is inconsistent");
    }
  }

  for (std::size_t i = 0; i < last_cost_.size(); ++i) {
    if (tree.node(static_cast<int>(i)).cost > last_cost_[i] + 1e-12) {
      fail("cost of node " + std::to_string(i) + " increased");
    }
  }
  last_cost_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    last_cost_[static_cast<std::size_t>(i)] = tree.node(i).cost;
  }

  const Workspace & w = tree.workspace();
  for (int id : tree.take_dirty()) {
    const auto & c = tree.node(id);
    const auto & p = tree.node(c.parent);
    if (!joint_transition_valid(w, p.state.x, c.state.x)) {
      fail("edge " + std::to_string(c.parent) + "->" + std::to_string(id) + " is not a valid transition");
    }
    if (!contains_sorted(tree.nba().step(p.state.q, tree.class_labels(p.position_class)), c.state.q)) {
      fail("edge " + std::to_string(c.parent) + "->" + std::to_string(id) + " violates the Buchi guard");
    }
  }
}

UniformGrower::UniformGrower(Tree & tree, RadiusSchedule schedule, Rng rng)
    : tree_(&tree), schedule_(schedule), rng_(std::move(rng))
{
}

std::vector<int> UniformGrower::iterate()
{
  const Workspace & w = tree_->workspace();
  JointState x_new;
  int nearest = -1;
  for (long attempt = 0;; ++attempt) {
    if (attempt >= kMaxRejections) {
      throw SamplerAbort("no valid x_new after 1e6 attempts");
    }
    const JointState x_rand = sample_uniform(w, rng_);
    nearest = tree_->nearest_class(x_rand);
    x_new = steer(tree_->class_position(nearest), x_rand, schedule_.eta);
    if (joint_state_valid(w, x_new)) {
      break;
    }
  }
  std::vector<int> classes = tree_->near_classes(x_new, schedule_.radius(tree_->class_count()));
  classes.push_back(nearest);
  return insert_product_states(*tree_, x_new, nodes_of_classes(*tree_, classes));
}

GrowResult grow_tree(Tree & tree, const std::function<std::vector<int>()> & step, const GoalPredicate & goal,
                     const GrowOptions & opt, InvariantChecker * checker)
{
  const auto start = std::chrono::steady_clock::now();
  GrowResult res;
  if (goal(tree, 0)) {
    res.goals.push_back(0);
    res.stats.first_goal_iteration = 0;
  }
  for (long it = 1; it <= opt.n_max; ++it) {
    if (opt.stop_at_first_goal && !res.goals.empty()) {
      break;
    }
    if (opt.deadline && std::chrono::steady_clock::now() >= *opt.deadline) {
      break;
    }
    const auto added = step();
    res.stats.iterations = it;
    for (int id : added) {
      if (goal(tree, id)) {
        if (res.goals.empty()) {
          res.stats.first_goal_iteration = it;
        }
        res.goals.push_back(id);
      }
    }
    if (checker && opt.check_every > 0 && it % opt.check_every == 0) {
      checker->check(tree);
    }
  }
  if (checker && opt.check_every > 0) {
    checker->check(tree);
  }
  std::sort(res.goals.begin(), res.goals.end());
  res.stats.nodes = tree.size();
  res.stats.classes = tree.class_count();
  res.stats.goal_nodes = static_cast<int>(res.goals.size());
  res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace tlrrt
