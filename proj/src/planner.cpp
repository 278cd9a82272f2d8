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

#include "tlrrt/planner.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <stdexcept>

namespace tlrrt
{

using nlohmann::json;

std::string to_string(PlannerMode m) { return m == PlannerMode::kBiased ? "biased" : "unbiased"; }

PlannerMode planner_mode_from_string(const std::string & s)
{
  if (s == "unbiased") {
    return PlannerMode::kUnbiased;
  }
  if (s == "biased") {
    return PlannerMode::kBiased;
  }
  throw std::invalid_argument("mode must be unbiased or biased, got '" + s + "'");
}

std::string to_string(PlanStatus s)
{
  switch (s) {
    case PlanStatus::kOk: return "ok";
    case PlanStatus::kNoPlan: return "no_plan";
    case PlanStatus::kInfeasibleNba: return "infeasible_nba";
  }
  return "no_plan";
}

void PlannerParams::validate() const
{
  if (n_max_pre < 0 || n_max_suf < 0) {
    throw std::invalid_argument("iteration limits must be non-negative");
  }
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::invalid_argument("w must lie in [0, 1]");
  }
  if (!(theta > 0.0 && theta < 0.25)) {
    throw std::invalid_argument("theta must lie in (0, 1/4)");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("epsilon and kappa must lie in (0, 1)");
  }
  if (!(time_limit >= 0.0)) {
    throw std::invalid_argument("time_limit must be non-negative");
  }
  if (cycle_close.iterations < 1 || !(cycle_close.eta > 0.0) ||
      !(cycle_close.goal_bias >= 0.0 && cycle_close.goal_bias < 1.0)) {
    throw std::invalid_argument("invalid cycle_close parameters");
  }
  bias.validate();
}

json params_to_json(const PlannerParams & p)
{
  json j;
  j["mode"] = to_string(p.mode);
  j["radius"] = to_string(p.radius_mode);
  j["n_max_pre"] = p.n_max_pre;
  j["n_max_suf"] = p.n_max_suf;
  j["eta"] = p.eta;
  j["w"] = p.w;
  j["theta"] = p.theta;
  j["epsilon"] = p.epsilon;
  j["kappa"] = p.kappa;
  if (p.cost_estimate_pre) {
    j["cost_estimate_pre"] = *p.cost_estimate_pre;
  }
  if (p.cost_estimate_suf) {
    j["cost_estimate_suf"] = *p.cost_estimate_suf;
  }
  j["first_feasible"] = p.first_feasible;
  j["time_limit"] = p.time_limit;
  j["seed"] = p.seed;
  j["check_every"] = p.check_every;
  json b;
  b["p_closest"] = p.bias.p_closest;
  b["p_idle"] = p.bias.p_idle;
  b["y_rand"] = p.bias.y_rand;
  b["mu_d"] = p.bias.mu_d;
  b["sigma_d"] = p.bias.sigma_d;
  b["mu_alpha"] = p.bias.mu_alpha;
  b["sigma_alpha"] = p.bias.sigma_alpha;
  if (p.bias.p_ug) {
    b["p_ug"] = *p.bias.p_ug;
  }
  b["clause_mode"] = to_string(p.bias.clause_mode);
  b["gaussian_redraws"] = p.bias.gaussian_redraws;
  j["bias"] = b;
  j["cycle_close"] = {{"iterations", p.cycle_close.iterations},
                      {"eta", p.cycle_close.eta},
                      {"goal_bias", p.cycle_close.goal_bias},
                      {"allow_endpoint_regions", p.cycle_close.allow_endpoint_regions}};
  return j;
}

namespace
{

template <typename T>
void take(const json & j, const char * key, T & out)
{
  if (!j.contains(key)) {
    return;
  }
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception &) {
    throw std::invalid_argument(std::string("bad type for parameter '") + key + "'");
  }
}

void reject_unknown(const json & j, const std::set<std::string> & known, const std::string & where)
{
  for (const auto & [k, v] : j.items()) {
    if (!known.count(k)) {
      throw std::invalid_argument("unknown parameter '" + where + k + "'");
    }
  }
}

}  // namespace

PlannerParams params_from_json(const json & j, PlannerParams base)
{
  if (!j.is_object()) {
    throw std::invalid_argument("parameters must be a JSON object");
  }
  reject_unknown(j,
                 {"mode", "radius", "n_max_pre", "n_max_suf", "eta", "w", "theta", "epsilon", "kappa",
                  "cost_estimate_pre", "cost_estimate_suf", "first_feasible", "time_limit", "seed", "check_every",
                  "bias", "cycle_close"},
                 "");
  PlannerParams p = std::move(base);
  std::string s;
  if (j.contains("mode")) {
    take(j, "mode", s);
    p.mode = planner_mode_from_string(s);
  }
  if (j.contains("radius")) {
    take(j, "radius", s);
    p.radius_mode = radius_mode_from_string(s);
  }
  take(j, "n_max_pre", p.n_max_pre);
  take(j, "n_max_suf", p.n_max_suf);
  take(j, "eta", p.eta);
  take(j, "w", p.w);
  take(j, "theta", p.theta);
  take(j, "epsilon", p.epsilon);
  take(j, "kappa", p.kappa);
  if (j.contains("cost_estimate_pre")) {
    double v = 0.0;
    take(j, "cost_estimate_pre", v);
    p.cost_estimate_pre = v;
  }
  if (j.contains("cost_estimate_suf")) {
    double v = 0.0;
    take(j, "cost_estimate_suf", v);
    p.cost_estimate_suf = v;
  }
  take(j, "first_feasible", p.first_feasible);
  take(j, "time_limit", p.time_limit);
  take(j, "seed", p.seed);
  take(j, "check_every", p.check_every);
  if (j.contains("bias")) {
    const json & b = j["bias"];
    if (!b.is_object()) {
      throw std::invalid_argument("'bias' must be an object");
    }
    reject_unknown(b,
                   {"p_closest", "p_idle", "y_rand", "mu_d", "sigma_d", "mu_alpha", "sigma_alpha", "p_ug",
                    "clause_mode", "gaussian_redraws"},
                   "bias.");
    take(b, "p_closest", p.bias.p_closest);
    take(b, "p_idle", p.bias.p_idle);
    take(b, "y_rand", p.bias.y_rand);
    take(b, "mu_d", p.bias.mu_d);
    take(b, "sigma_d", p.bias.sigma_d);
    take(b, "mu_alpha", p.bias.mu_alpha);
    take(b, "sigma_alpha", p.bias.sigma_alpha);
    if (b.contains("p_ug")) {
      double v = 0.0;
      take(b, "p_ug", v);
      p.bias.p_ug = v;
    }
    if (b.contains("clause_mode")) {
      take(b, "clause_mode", s);
      p.bias.clause_mode = clause_mode_from_string(s);
    }
    take(b, "gaussian_redraws", p.bias.gaussian_redraws);
  }
  if (j.contains("cycle_close")) {
    const json & c = j["cycle_close"];
    if (!c.is_object()) {
      throw std::invalid_argument("'cycle_close' must be an object");
    }
    reject_unknown(c, {"iterations", "eta", "goal_bias", "allow_endpoint_regions"}, "cycle_close.");
    take(c, "iterations", p.cycle_close.iterations);
    take(c, "eta", p.cycle_close.eta);
    take(c, "goal_bias", p.cycle_close.goal_bias);
    take(c, "allow_endpoint_regions", p.cycle_close.allow_endpoint_regions);
  }
  return p;
}

namespace
{

using Clock = std::chrono::steady_clock;
using Path = std::vector<ProductState>;

class Pipeline
{
public:
  Pipeline(const Workspace & w, const Nba & tree_nba, const Nba & verify_nba, const JointState & x0,
           const PlannerParams & p)
      : w_(w),
        nba_(tree_nba),
        verify_nba_(verify_nba),
        x0_(x0),
        p_(p),
        dist_(tree_nba),
        dim_(2 * w.n_robots()),
        eta_(p.effective_eta(w.n_robots())),
        mu_(free_measure(w)),
        start_(Clock::now())
  {
    if (p.time_limit > 0.0) {
      deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(p.time_limit));
    }
  }

  PlanResult run();

private:
  bool expired() const { return deadline_ && Clock::now() >= *deadline_; }

  RadiusSchedule schedule(const std::optional<double> & estimate, double & gamma_out);
  GrowOptions options(long n_max) const;
  void absorb(const InvariantChecker & c, const TreeStats & s, bool prefix);

  /// Grows the prefix tree from (x0, q0) and hands each accepting node to
  /// the suffix stage.
  void prefix_stage(int q0, std::uint64_t salt);
  bool suffix_stage(const Path & prefix, std::uint64_t salt);
  bool suffix_unbiased(const Path & prefix, std::uint64_t salt);
  bool suffix_biased(const Path & prefix, std::uint64_t salt);

  /// Verifies and keeps the plan if it is the cheapest so far.
  bool record(const Path & prefix, const std::vector<JointState> & suffix, const std::vector<int> & suffix_q);

  const Workspace & w_;
  const Nba & nba_;
  const Nba & verify_nba_;
  JointState x0_;
  const PlannerParams & p_;
  DistanceTable dist_;
  int dim_;
  double eta_;
  double mu_;
  Clock::time_point start_;
  Deadline deadline_;
  std::optional<VisibilityGraph> vis_;
  RunStats stats_;
  long iterations_ = 0;
  std::optional<Plan> best_;
};

RadiusSchedule Pipeline::schedule(const std::optional<double> & estimate, double & gamma_out)
{
  RadiusSchedule s;
  switch (p_.radius_mode) {
    case RadiusMode::kZero: s = RadiusSchedule::zero(dim_, eta_); break;
    case RadiusMode::kPractical: s = RadiusSchedule::practical(mu_, dim_, eta_); break;
    case RadiusMode::kOptimal:
      if (estimate && *estimate > 0.0) {
        s = RadiusSchedule::optimal(mu_, dim_, eta_, *estimate, p_.theta, p_.epsilon, p_.kappa);
      } else {
        stats_.radius_fallback = true;
        s = RadiusSchedule::practical(mu_, dim_, eta_);
      }
      break;
  }
  gamma_out = s.gamma;
  return s;
}

GrowOptions Pipeline::options(long n_max) const
{
  GrowOptions o;
  o.n_max = n_max;
  o.stop_at_first_goal = p_.first_feasible;
  o.deadline = deadline_;
  o.check_every = p_.check_every;
  return o;
}

void Pipeline::absorb(const InvariantChecker & c, const TreeStats & s, bool prefix)
{
  stats_.invariant_checks += c.report().checks;
  stats_.invariant_violations += c.report().violations;
  for (const auto & m : c.report().messages) {
    if (stats_.invariant_messages.size() < 8) {
      stats_.invariant_messages.push_back(m);
    }
  }
  if (prefix) {
    stats_.prefix_iterations += s.iterations;
    stats_.prefix_nodes += s.nodes;
  } else {
    stats_.suffix_iterations += s.iterations;
    ++stats_.suffix_trees;
  }
}

bool Pipeline::record(const Path & prefix, const std::vector<JointState> & suffix, const std::vector<int> & suffix_q)
{
  Plan plan;
  for (const auto & s : prefix) {
    plan.prefix.push_back(s.x);
    plan.prefix_q.push_back(s.q);
  }
  plan.suffix = suffix;
  plan.suffix_q = suffix_q;
  plan.weight = p_.w;
  plan.seed = p_.seed;
  plan.params_json = params_to_json(p_).dump();
  refresh_costs(plan);
  if (!verify_plan(plan, verify_nba_, w_).ok()) {
    ++stats_.rejected_candidates;
    return false;
  }
  if (stats_.iterations_to_first_plan < 0) {
    stats_.iterations_to_first_plan = iterations_;
    stats_.seconds_to_first_plan = std::chrono::duration<double>(Clock::now() - start_).count();
  }
  if (!best_ || plan.cost < best_->cost) {
    best_ = std::move(plan);
  }
  return true;
}

bool Pipeline::suffix_stage(const Path & prefix, std::uint64_t salt)
{
  const ProductState & root = prefix.back();
  if (suffix_goal(w_, nba_, root, root)) {
    return record(prefix, {}, {});
  }
  if (dist_.cycle(root.q) == DistanceTable::kInf || expired()) {
    return false;
  }
  return p_.mode == PlannerMode::kBiased ? suffix_biased(prefix, salt) : suffix_unbiased(prefix, salt);
}

bool Pipeline::suffix_unbiased(const Path & prefix, std::uint64_t salt)
{
  const ProductState & root = prefix.back();
  Tree tree(w_, nba_, root);
  UniformGrower grower(tree, schedule(p_.cost_estimate_suf, stats_.gamma_suf),
                       make_rng(p_.seed, RngSite::kSuffixSample, salt));
  InvariantChecker checker;
  auto step = [&] {
    ++iterations_;
    return grower.iterate();
  };
  auto goal = [&](const Tree & t, int id) { return id != 0 && suffix_goal(w_, nba_, t.node(id).state, root); };
  const auto res = grow_tree(tree, step, goal, options(p_.n_max_suf), &checker);
  absorb(checker, res.stats, false);
  if (res.goals.empty()) {
    return false;
  }
  // e* = argmin Cost(e) + C(e, root), evaluated on the final tree.
  int best = res.goals.front();
  double best_cost = std::numeric_limits<double>::infinity();
  for (int id : res.goals) {
    const double c = tree.node(id).cost + cost_c(tree.node(id).state.x, root.x);
    if (c < best_cost) {
      best_cost = c;
      best = id;
    }
  }
  const Path path = find_plan(tree, best);
  std::vector<JointState> ys;
  std::vector<int> qs;
  for (std::size_t k = 1; k < path.size(); ++k) {
    ys.push_back(path[k].x);
    qs.push_back(path[k].q);
  }
  return record(prefix, ys, qs);
}

bool Pipeline::suffix_biased(const Path & prefix, std::uint64_t salt)
{
  const ProductState & root = prefix.back();
  Tree tree(w_, nba_, root);
  BiasedSampler sampler(tree, dist_, root.q, true, p_.bias, *vis_, p_.seed, 2 * salt + 1);
  BiasedGrower grower(tree, sampler, schedule(p_.cost_estimate_suf, stats_.gamma_suf));
  Rng close_rng = make_rng(p_.seed, RngSite::kCycleClose, salt);
  InvariantChecker checker;
  std::vector<LabelSet> head;
  for (std::size_t k = 0; k + 1 < prefix.size(); ++k) {
    head.push_back(labels_of(w_, prefix[k].x));
  }
  bool found = false;
  auto step = [&] {
    ++iterations_;
    return grower.iterate();
  };
  auto goal = [&](const Tree & t, int id) {
    if (id == 0) {
      return false;
    }
    const ProductState & s = t.node(id).state;
    const bool direct = suffix_goal(w_, nba_, s, root);
    const bool same = s.q == root.q;
    if (!direct && !same) {
      return false;
    }
    const Path path = find_plan(t, id);
    std::vector<JointState> ys;
    std::vector<int> qs;
    for (std::size_t k = 1; k < path.size(); ++k) {
      ys.push_back(path[k].x);
      qs.push_back(path[k].q);
    }
    if (direct && record(prefix, ys, qs)) {
      found = true;
      return true;
    }
    if (!same) {
      return false;
    }
    // Closing through region-free space adds only empty labels; skip the
    // motion planning when no such closure could be accepted.
    std::vector<LabelSet> cycle{labels_of(w_, root.x)};
    for (const auto & y : ys) {
      cycle.push_back(labels_of(w_, y));
    }
    bool plausible = accepts_lasso(nba_, head, cycle);
    cycle.push_back(LabelSet{});
    plausible = plausible || accepts_lasso(nba_, head, cycle);
    if (!plausible) {
      return false;
    }
    ++stats_.cycle_close_attempts;
    const auto closure = suffix_cycle_close(w_, s.x, root.x, p_.cycle_close, close_rng);
    if (!closure.ok) {
      ++stats_.cycle_close_failures;
      return false;
    }
    for (std::size_t k = 1; k + 1 < closure.waypoints.size(); ++k) {
      ys.push_back(closure.waypoints[k]);
      qs.push_back(-1);
    }
    if (record(prefix, ys, qs)) {
      found = true;
      return true;
    }
    return false;
  };
  // A recorded closure is a snapshot; further growth cannot improve it.
  GrowOptions opt = options(p_.n_max_suf);
  opt.stop_at_first_goal = true;
  const auto res = grow_tree(tree, step, goal, opt, &checker);
  absorb(checker, res.stats, false);
  stats_.sampler_skips += sampler.counters().skips;
  stats_.geodesic_fallbacks += sampler.counters().geodesic_fallbacks;
  return found;
}

void Pipeline::prefix_stage(int q0, std::uint64_t salt)
{
  const ProductState root{x0_, q0};
  Tree tree(w_, nba_, root);
  InvariantChecker checker;
  std::optional<UniformGrower> uniform;
  std::optional<BiasedSampler> sampler;
  std::optional<BiasedGrower> biased;
  const RadiusSchedule sched = schedule(p_.cost_estimate_pre, stats_.gamma_pre);
  if (p_.mode == PlannerMode::kBiased) {
    const auto feas = feasible_accepting(nba_, dist_, q0);
    Rng pick = make_rng(p_.seed, RngSite::kAcceptingChoice, salt);
    const int q_target = feas[static_cast<std::size_t>(pick.below(feas.size()))];
    sampler.emplace(tree, dist_, q_target, false, p_.bias, *vis_, p_.seed, 2 * salt);
    biased.emplace(tree, *sampler, sched);
  } else {
    uniform.emplace(tree, sched, make_rng(p_.seed, RngSite::kPrefixSample, salt));
  }
  auto step = [&] {
    ++iterations_;
    return biased ? biased->iterate() : uniform->iterate();
  };
  int hits = 0;
  std::uint64_t suffix_salt = salt << 32;
  GrowResult res;
  if (p_.first_feasible) {
    auto goal = [&](const Tree & t, int id) {
      if (!prefix_goal(nba_, t.node(id).state)) {
        return false;
      }
      ++hits;
      return suffix_stage(find_plan(t, id), ++suffix_salt);
    };
    res = grow_tree(tree, step, goal, options(p_.n_max_pre), &checker);
  } else {
    auto goal = [&](const Tree & t, int id) { return prefix_goal(nba_, t.node(id).state); };
    res = grow_tree(tree, step, goal, options(p_.n_max_pre), &checker);
    hits = static_cast<int>(res.goals.size());
  }
  absorb(checker, res.stats, true);
  stats_.n_goal += hits;
  if (sampler) {
    stats_.sampler_skips += sampler->counters().skips;
    stats_.geodesic_fallbacks += sampler->counters().geodesic_fallbacks;
  }
  if (!p_.first_feasible) {
    for (int id : res.goals) {
      if (expired()) {
        break;
      }
      suffix_stage(find_plan(tree, id), ++suffix_salt);
    }
  }
}

PlanResult Pipeline::run()
{
  PlanResult out;
  std::vector<int> roots;
  for (int q0 : nba_.initial()) {
    if (!feasible_accepting(nba_, dist_, q0).empty()) {
      roots.push_back(q0);
    }
  }
  if (roots.empty()) {
    out.status = PlanStatus::kInfeasibleNba;
    out.message = "the automaton has no reachable accepting cycle";
    return out;
  }
  if (!joint_state_valid(w_, x0_)) {
    out.status = PlanStatus::kNoPlan;
    out.message = "initial joint state is not free or violates separation";
    return out;
  }
  if (p_.mode == PlannerMode::kBiased) {
    vis_.emplace(w_);
  }
  std::uint64_t salt = 0;
  for (int q0 : roots) {
    if (expired() || (p_.first_feasible && best_)) {
      break;
    }
    prefix_stage(q0, ++salt);
  }
  stats_.timed_out = expired();
  stats_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
  out.stats = stats_;
  if (best_) {
    out.status = PlanStatus::kOk;
    out.plan = std::move(best_);
  } else {
    out.status = PlanStatus::kNoPlan;
    out.message = stats_.n_goal == 0 ? "no accepting product state reached by the prefix tree"
                                     : "accepting states found but no suffix cycle closed";
    if (stats_.timed_out) {
      out.message += " (time limit reached)";
    }
  }
  return out;
}

/// Fills missing cost estimates for the optimal radius from a practical run.
PlannerParams with_estimates(const Workspace & w, const Nba & tree_nba, const Nba & verify_nba,
                             const JointState & x0, const PlannerParams & p)
{
  PlannerParams q = p;
  if (p.radius_mode != RadiusMode::kOptimal || (p.cost_estimate_pre && p.cost_estimate_suf)) {
    return q;
  }
  PlannerParams pilot = p;
  pilot.radius_mode = RadiusMode::kPractical;
  pilot.first_feasible = true;
  pilot.check_every = 0;
  pilot.seed = make_rng(p.seed, RngSite::kPilot).next();
  const PlanResult r = Pipeline(w, tree_nba, verify_nba, x0, pilot).run();
  if (r.plan) {
    if (!q.cost_estimate_pre) {
      q.cost_estimate_pre = r.plan->prefix_cost;
    }
    if (!q.cost_estimate_suf) {
      q.cost_estimate_suf = r.plan->suffix_cost;
    }
  }
  return q;
}

PlanResult run_pipeline(const Workspace & w, const Nba & tree_nba, const Nba & verify_nba, const JointState & x0,
                        const PlannerParams & p)
{
  p.validate();
  if (x0.size() != static_cast<std::size_t>(2 * w.n_robots())) {
    throw std::invalid_argument("initial state does not match the robot count");
  }
  const PlannerParams q = with_estimates(w, tree_nba, verify_nba, x0, p);
  PlanResult r = Pipeline(w, tree_nba, verify_nba, x0, q).run();
  if (r.plan) {
    // The echoed parameters are the ones the caller supplied.
    r.plan->params_json = params_to_json(p).dump();
  }
  return r;
}

}  // namespace

PlanResult plan_unbiased(const Workspace & w, const Nba & nba, const JointState & x0, const PlannerParams & p)
{
  PlannerParams q = p;
  q.mode = PlannerMode::kUnbiased;
  return run_pipeline(w, nba, nba, x0, q);
}

PlanResult plan_biased(const Workspace & w, const Nba & nba, const JointState & x0, const PlannerParams & p)
{
  PlannerParams q = p;
  q.mode = PlannerMode::kBiased;
  Nba pruned = prune(nba, w.disjointness());
  if (!q.subformulas.empty()) {
    pruned = prune_multi_subformula(pruned, q.subformulas);
  }
  return run_pipeline(w, pruned, nba, x0, q);
}

PlanResult plan(const Workspace & w, const Nba & nba, const JointState & x0, const PlannerParams & p)
{
  return p.mode == PlannerMode::kBiased ? plan_biased(w, nba, x0, p) : plan_unbiased(w, nba, x0, p);
}

}  // namespace tlrrt
