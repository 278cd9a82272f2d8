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

#include "tlrrt/bias.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tlrrt
{

std::string to_string(ClauseMode m) { return m == ClauseMode::kMinLength ? "min-length" : "random"; }

ClauseMode clause_mode_from_string(const std::string & s)
{
  if (s == "random") {
    return ClauseMode::kRandom;
  }
  if (s == "min-length") {
    return ClauseMode::kMinLength;
  }
  throw std::invalid_argument("clause mode must be random or min-length, got '" + s + "'");
}

void BiasParams::validate() const
{
  auto in_open = [](double v, double lo, double hi) { return v > lo && v < hi; };
  if (!in_open(p_closest, 0.5, 1.0)) {
    throw std::invalid_argument("p_closest must lie in (0.5, 1)");
  }
  if (!(p_idle >= 0.0 && p_idle <= 1.0)) {
    throw std::invalid_argument("p_idle must lie in [0, 1]");
  }
  if (!in_open(y_rand, 0.5, 1.0)) {
    throw std::invalid_argument("y_rand must lie in (0.5, 1)");
  }
  if (!(sigma_d >= 0.0) || !(sigma_alpha >= 0.0)) {
    throw std::invalid_argument("standard deviations must be non-negative");
  }
  if (p_ug && !(*p_ug > 0.0 && *p_ug <= 1.0)) {
    throw std::invalid_argument("p_ug must lie in (0, 1]");
  }
  if (gaussian_redraws < 0) {
    throw std::invalid_argument("gaussian_redraws must be non-negative");
  }
}

double ug_pmf(long i, double p)
{
  if (i < 1) {
    return 0.0;
  }
  if (p >= 1.0) {
    return i == 1 ? 1.0 : 0.0;
  }
  // Tail of the series sum_{n >= i} p (1-p)^(n-1) / n, summed directly.
  const double q = 1.0 - p;
  if (p < 0.05) {
    // sum_{n >= i} q^n / n = -ln p - sum_{n < i} q^n / n; the direct tail
    // would need on the order of 1/p terms.
    double head = 0.0;
    double qn = 1.0;
    for (long n = 1; n < i; ++n) {
      qn *= q;
      head += qn / static_cast<double>(n);
    }
    return std::max(0.0, p / q * (-std::log(p) - head));
  }
  double term_base = p * std::pow(q, static_cast<double>(i - 1));
  double sum = 0.0;
  for (long n = i;; ++n) {
    const double t = term_base / static_cast<double>(n);
    sum += t;
    if (t <= sum * 1e-17 || term_base == 0.0) {
      break;
    }
    term_base *= q;
  }
  return sum;
}

long ug_sample_finite(long n, double p, Rng & rng)
{
  if (n <= 1 || p >= 1.0) {
    return 1;
  }
  // Compound draw: G ~ Geometric(p) on {1, 2, ...}, then I ~ U{1..G};
  // rejecting I > n renormalizes over [1, n].
  const double log_q = std::log1p(-p);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    const double g_real = 1.0 + std::floor(std::log(u) / log_q);
    const auto g = static_cast<std::uint64_t>(std::min(g_real, 1e15));
    const auto i = static_cast<long>(1 + rng.below(g));
    if (i <= n) {
      return i;
    }
  }
  // Table inversion; reached only for extreme parameters.
  std::vector<double> cdf(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (long i = 1; i <= n; ++i) {
    acc += ug_pmf(i, p);
    cdf[static_cast<std::size_t>(i - 1)] = acc;
  }
  const double u = rng.uniform() * acc;
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<long>(n, static_cast<long>(it - cdf.begin()) + 1);
}

void DminTracker::update(const Tree & tree)
{
  for (; seen_ < tree.size(); ++seen_) {
    const int v = metric_.at(static_cast<std::size_t>(tree.node(seen_).state.q));
    if (v < value_) {
      std::vector<int> merged;
      merged.reserve(others_.size() + members_.size());
      std::merge(others_.begin(), others_.end(), members_.begin(), members_.end(), std::back_inserter(merged));
      others_.swap(merged);
      members_.assign(1, seen_);
      value_ = v;
    } else if (v == value_) {
      members_.push_back(seen_);
    } else {
      others_.push_back(seen_);
    }
  }
}

int sample_closest(const DminTracker & dmin, const BiasParams & params, Rng & rng)
{
  const auto & d = dmin.members();
  const auto & o = dmin.others();
  const std::vector<int> * set = &d;
  if (d.empty()) {
    set = &o;
  } else if (!o.empty() && !rng.bernoulli(params.p_closest)) {
    set = &o;
  }
  const long n = static_cast<long>(set->size());
  if (n == 0) {
    throw std::logic_error("sample_closest on an empty tree");
  }
  const double p = params.p_ug ? *params.p_ug : 1.0 / static_cast<double>(n);
  const long rank = ug_sample_finite(n, p, rng);
  return (*set)[static_cast<std::size_t>(n - rank)];
}

int distance_from(const DistanceTable & dist, int q, int q_target)
{
  return q == q_target ? dist.cycle(q_target) : dist.rho(q, q_target);
}

std::optional<std::pair<int, int>> select_successors(const Nba & nba, const DistanceTable & dist, int q_target,
                                                     int q_closest, const LabelSet & labels, Rng & rng)
{
  const int d0 = distance_from(dist, q_closest, q_target);
  const auto first = nba.step(q_closest, labels);
  std::vector<std::pair<int, int>> strict;
  std::vector<std::pair<int, int>> equal;
  for (int s1 : first) {
    // Reaching the target counts as distance 0; leaving it again is measured
    // around its cycle.
    const int d1 = dist.rho(s1, q_target);
    if (d1 == DistanceTable::kInf || d1 > d0) {
      continue;
    }
    auto & bucket = d1 < d0 ? strict : equal;
    const int onward = distance_from(dist, s1, q_target);
    for (int e : nba.out_edges(s1)) {
      const int s2 = nba.transitions()[static_cast<std::size_t>(e)].dst;
      if (dist.rho(s2, q_target) < onward) {
        bucket.emplace_back(s1, s2);
      }
    }
  }
  const auto & pairs = strict.empty() ? equal : strict;
  if (pairs.empty()) {
    return std::nullopt;
  }
  return pairs[static_cast<std::size_t>(rng.below(pairs.size()))];
}

DnfClause select_clause(const Dnf & dnf, ClauseMode mode, Rng & rng)
{
  if (dnf.empty()) {
    throw std::invalid_argument("select_clause: guard has no satisfiable clause");
  }
  if (mode == ClauseMode::kRandom) {
    return dnf[static_cast<std::size_t>(rng.below(dnf.size()))];
  }
  return *std::min_element(dnf.begin(), dnf.end(), [](const DnfClause & a, const DnfClause & b) {
    if (a.positives.size() != b.positives.size()) {
      return a.positives.size() < b.positives.size();
    }
    return a < b;
  });
}

std::vector<std::optional<int>> region_assignment(const DnfClause & sigma, int n_robots)
{
  std::vector<std::optional<int>> out(static_cast<std::size_t>(n_robots));
  for (const auto & a : sigma.positives) {
    if (a.robot < 1 || a.robot > n_robots) {
      throw std::invalid_argument("clause mentions robot " + std::to_string(a.robot));
    }
    auto & slot = out[static_cast<std::size_t>(a.robot - 1)];
    if (slot && *slot != a.region) {
      throw std::invalid_argument("clause puts robot " + std::to_string(a.robot) + " in two regions");
    }
    slot = a.region;
  }
  return out;
}

namespace
{

std::vector<int> metric_table(const DistanceTable & dist, int q_target, bool suffix_metric)
{
  std::vector<int> m(static_cast<std::size_t>(dist.size()));
  for (int q = 0; q < dist.size(); ++q) {
    m[static_cast<std::size_t>(q)] = suffix_metric ? distance_from(dist, q, q_target) : dist.rho(q, q_target);
  }
  return m;
}

}  // namespace

BiasedSampler::BiasedSampler(const Tree & tree, const DistanceTable & dist, int q_target, bool suffix_metric,
                             BiasParams params, const VisibilityGraph & vis, std::uint64_t seed,
                             std::uint64_t salt)
    : tree_(&tree),
      dist_(&dist),
      q_target_(q_target),
      params_(std::move(params)),
      vis_(&vis),
      select_rng_(make_rng(seed, RngSite::kBiasSelect, salt)),
      geo_rng_(make_rng(seed, RngSite::kBiasGeometry, salt)),
      dmin_(metric_table(dist, q_target, suffix_metric))
{
}

Vec2 BiasedSampler::robot_sample(int /*robot*/, Vec2 from, const std::optional<int> & region)
{
  const Workspace & w = tree_->workspace();
  if (!region) {
    if (geo_rng_.bernoulli(params_.p_idle)) {
      ++counters_.idle_draws;
      return from;
    }
    ++counters_.uniform_draws;
    return sample_free_point(w, geo_rng_);
  }
  if (geo_rng_.uniform() > params_.y_rand) {
    ++counters_.uniform_draws;
    return sample_free_point(w, geo_rng_);
  }
  const Vec2 c = centroid(w.region(*region).polygon);
  Vec2 target = c;
  try {
    const auto path = vis_->geodesic(from, c);
    if (path.size() >= 2) {
      target = path[1];
    }
  } catch (const NoPathError &) {
    ++counters_.geodesic_fallbacks;
    return sample_free_point(w, geo_rng_);
  }
  const Vec2 dir = target - from;
  const double base = (dir.x == 0.0 && dir.y == 0.0) ? 0.0 : std::atan2(dir.y, dir.x);
  ++counters_.gaussian_draws;
  for (int k = 0; k < params_.gaussian_redraws; ++k) {
    const double d = std::abs(geo_rng_.normal(params_.mu_d, params_.sigma_d));
    const double a = base + geo_rng_.normal(params_.mu_alpha, params_.sigma_alpha);
    const Vec2 p{from.x + d * std::cos(a), from.y + d * std::sin(a)};
    if (w.bounds().contains(p) && point_free(w, p)) {
      return p;
    }
  }
  ++counters_.gaussian_fallbacks;
  return sample_free_point(w, geo_rng_);
}

std::optional<BiasedSample> BiasedSampler::sample()
{
  dmin_.update(*tree_);
  const int id = sample_closest(dmin_, params_, select_rng_);
  const TreeNode & node = tree_->node(id);
  const Nba & nba = tree_->nba();
  const auto pair = select_successors(nba, *dist_, q_target_, node.state.q,
                                      tree_->class_labels(node.position_class), select_rng_);
  if (!pair) {
    ++counters_.skips;
    return std::nullopt;
  }
  const NbaTransition * t = nba.find_transition(pair->first, pair->second);
  const DnfClause sigma = select_clause(t->dnf, params_.clause_mode, select_rng_);
  const int n = tree_->workspace().n_robots();
  const auto assign = region_assignment(sigma, n);
  BiasedSample out;
  out.closest = id;
  out.x_rand = node.state.x;
  for (int i = 0; i < n; ++i) {
    set_robot_pos(out.x_rand, i, robot_sample(i, robot_pos(node.state.x, i), assign[static_cast<std::size_t>(i)]));
  }
  return out;
}

BiasedGrower::BiasedGrower(Tree & tree, BiasedSampler & sampler, RadiusSchedule schedule)
    : tree_(&tree), sampler_(&sampler), schedule_(schedule)
{
}

std::vector<int> BiasedGrower::iterate()
{
  const Workspace & w = tree_->workspace();
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const auto s = sampler_->sample();
    if (!s) {
      return {};
    }
    const JointState x_new = steer(tree_->node(s->closest).state.x, s->x_rand, schedule_.eta);
    if (!joint_state_valid(w, x_new)) {
      continue;
    }
    auto near = nodes_of_classes(*tree_, tree_->near_classes(x_new, schedule_.radius(tree_->class_count())));
    if (!std::binary_search(near.begin(), near.end(), s->closest)) {
      near.insert(std::upper_bound(near.begin(), near.end(), s->closest), s->closest);
    }
    return insert_product_states(*tree_, x_new, near);
  }
  return {};
}

namespace
{

/// Free space for one robot's closing path: obstacles and the interiors of
/// regions that are not explicitly allowed are blocked.
struct Clearance
{
  const Workspace * w;
  std::vector<char> allowed;  // indexed by label - 1

  bool point_open(Vec2 p) const
  {
    if (!w->bounds().contains(p) || !point_free(*w, p)) {
      return false;
    }
    for (const auto & r : w->regions()) {
      if (!allowed[static_cast<std::size_t>(r.label - 1)] && classify_point(r.polygon, p) == PointClass::kInside) {
        return false;
      }
    }
    return true;
  }

  bool segment_open(Vec2 a, Vec2 b) const
  {
    if (!robot_transition_valid(*w, a, b)) {
      return false;
    }
    for (const auto & r : w->regions()) {
      if (!allowed[static_cast<std::size_t>(r.label - 1)] && segment_hits_interior(r.polygon, a, b)) {
        return false;
      }
    }
    return true;
  }
};

Clearance clearance_for(const Workspace & w, Vec2 a, Vec2 b, bool allow_endpoint_regions)
{
  Clearance c{&w, std::vector<char>(static_cast<std::size_t>(w.n_regions()), 0)};
  if (allow_endpoint_regions) {
    for (const auto & r : w.regions()) {
      if (classify_point(r.polygon, a) != PointClass::kOutside || classify_point(r.polygon, b) != PointClass::kOutside) {
        c.allowed[static_cast<std::size_t>(r.label - 1)] = 1;
      }
    }
  }
  return c;
}

Vec2 steer2(Vec2 from, Vec2 to, double eta)
{
  const double d = norm(to - from);
  if (d <= eta) {
    return to;
  }
  return from + (eta / d) * (to - from);
}

std::optional<std::vector<Vec2>> robot_path(const Clearance & clear, Vec2 start, Vec2 goal,
                                            const CycleCloseParams & prm, Rng & rng)
{
  const Workspace & w = *clear.w;
  if (start == goal) {
    return std::vector<Vec2>{start};
  }
  if (clear.segment_open(start, goal)) {
    return std::vector<Vec2>{start, goal};
  }
  const double free_area = std::max(w.bounds().area() - obstacle_union_area(w), 1e-12);
  const double gamma = std::ceil(4.0 * std::sqrt(free_area / M_PI));

  KdTree kd(2);
  std::vector<Vec2> pos{start};
  std::vector<int> parent{0};
  std::vector<double> cost{0.0};
  std::vector<std::vector<int>> children(1);
  kd.insert({start.x, start.y});
  std::vector<int> linked;  // nodes with a clear segment to the goal

  auto propagate = [&](int root) {
    std::vector<int> work(children[static_cast<std::size_t>(root)]);
    while (!work.empty()) {
      const int c = work.back();
      work.pop_back();
      const int p = parent[static_cast<std::size_t>(c)];
      cost[static_cast<std::size_t>(c)] = cost[static_cast<std::size_t>(p)] + norm(pos[static_cast<std::size_t>(c)] - pos[static_cast<std::size_t>(p)]);
      const auto & ch = children[static_cast<std::size_t>(c)];
      work.insert(work.end(), ch.begin(), ch.end());
    }
  };

  for (int it = 1; it <= prm.iterations; ++it) {
    if (!linked.empty() && it > prm.iterations / 4) {
      break;
    }
    Vec2 s = goal;
    if (!rng.bernoulli(prm.goal_bias)) {
      s = sample_free_point(w, rng);
    }
    const int nn = kd.nearest({s.x, s.y});
    const Vec2 x = steer2(pos[static_cast<std::size_t>(nn)], s, prm.eta);
    if (!clear.point_open(x) || kd.find({x.x, x.y}) >= 0) {
      continue;
    }
    const double k = static_cast<double>(pos.size());
    const double r = k <= 1.0 ? prm.eta : std::min(gamma * std::sqrt(std::log(k) / k), prm.eta);
    std::vector<int> near = kd.within({x.x, x.y}, r);
    if (!std::binary_search(near.begin(), near.end(), nn)) {
      near.insert(std::upper_bound(near.begin(), near.end(), nn), nn);
    }
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int j : near) {
      const double c = cost[static_cast<std::size_t>(j)] + norm(x - pos[static_cast<std::size_t>(j)]);
      if (c < best_cost && clear.segment_open(pos[static_cast<std::size_t>(j)], x)) {
        best = j;
        best_cost = c;
      }
    }
    if (best < 0) {
      continue;
    }
    const int id = kd.insert({x.x, x.y});
    pos.push_back(x);
    parent.push_back(best);
    cost.push_back(best_cost);
    children.emplace_back();
    children[static_cast<std::size_t>(best)].push_back(id);
    for (int j : near) {
      if (j == 0) {
        continue;
      }
      const double c = best_cost + norm(pos[static_cast<std::size_t>(j)] - x);
      if (c < cost[static_cast<std::size_t>(j)] && clear.segment_open(x, pos[static_cast<std::size_t>(j)])) {
        auto & old = children[static_cast<std::size_t>(parent[static_cast<std::size_t>(j)])];
        old.erase(std::find(old.begin(), old.end(), j));
        parent[static_cast<std::size_t>(j)] = id;
        children[static_cast<std::size_t>(id)].push_back(j);
        cost[static_cast<std::size_t>(j)] = c;
        propagate(j);
      }
    }
    if (x == goal || clear.segment_open(x, goal)) {
      linked.push_back(id);
    }
  }
  if (linked.empty()) {
    return std::nullopt;
  }
  int best = linked.front();
  double best_total = std::numeric_limits<double>::infinity();
  for (int id : linked) {
    const double total = cost[static_cast<std::size_t>(id)] + norm(goal - pos[static_cast<std::size_t>(id)]);
    if (total < best_total) {
      best_total = total;
      best = id;
    }
  }
  std::vector<Vec2> path;
  if (!(pos[static_cast<std::size_t>(best)] == goal)) {
    path.push_back(goal);
  }
  for (int cur = best;; cur = parent[static_cast<std::size_t>(cur)]) {
    path.push_back(pos[static_cast<std::size_t>(cur)]);
    if (cur == 0) {
      break;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

CycleCloseResult suffix_cycle_close(const Workspace & w, const JointState & x_from, const JointState & x_to,
                                    const CycleCloseParams & params, Rng & rng)
{
  CycleCloseResult res;
  const int n = w.n_robots();
  std::vector<Clearance> clear;
  for (int i = 0; i < n; ++i) {
    const Vec2 a = robot_pos(x_from, i);
    const Vec2 b = robot_pos(x_to, i);
    clear.push_back(clearance_for(w, a, b, params.allow_endpoint_regions));
    if (!clear.back().point_open(a) || !clear.back().point_open(b)) {
      res.diagnostic = "robot " + std::to_string(i + 1) + " endpoint is blocked or inside a labeled region";
      return res;
    }
  }
  std::size_t longest = 1;
  for (int i = 0; i < n; ++i) {
    auto path = robot_path(clear[static_cast<std::size_t>(i)], robot_pos(x_from, i), robot_pos(x_to, i), params, rng);
    if (!path) {
      res.diagnostic = "no region-avoiding path found for robot " + std::to_string(i + 1);
      res.robot_paths.clear();
      return res;
    }
    longest = std::max(longest, path->size());
    res.robot_paths.push_back(std::move(*path));
  }
  for (std::size_t k = 0; k < longest; ++k) {
    JointState x(x_from.size());
    for (int i = 0; i < n; ++i) {
      const auto & path = res.robot_paths[static_cast<std::size_t>(i)];
      set_robot_pos(x, i, path[std::min(k, path.size() - 1)]);
    }
    res.waypoints.push_back(std::move(x));
  }
  res.ok = true;
  return res;
}

}  // namespace tlrrt
