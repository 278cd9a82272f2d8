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
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tlrrt/bias.hpp"

using namespace tlrrt;

namespace
{

/// Direct double sum: sum_{n >= i} p (1-p)^(n-1) / n, truncated where the
/// tail bound drops below 1e-18.
double ug_double_sum(long i, double p)
{
  double s = 0.0;
  for (long n = i; n < 100000; ++n) {
    const double t = p * std::pow(1.0 - p, static_cast<double>(n - 1)) / static_cast<double>(n);
    s += t;
    if (std::pow(1.0 - p, static_cast<double>(n)) < 1e-18) {
      break;
    }
  }
  return s;
}

/// Upper 1% point of chi-square via the Wilson-Hilferty approximation.
double chi2_crit_1pct(int df)
{
  const double z = 2.326347874;
  const double k = df;
  const double a = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

double chi2_of_ranks(long n, double p, int draws, Rng & rng, int * df)
{
  std::vector<double> expected(static_cast<std::size_t>(n));
  double z = 0.0;
  for (long i = 1; i <= n; ++i) {
    z += ug_double_sum(i, p);
  }
  for (long i = 1; i <= n; ++i) {
    expected[static_cast<std::size_t>(i - 1)] = draws * ug_double_sum(i, p) / z;
  }
  std::vector<int> hist(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < draws; ++k) {
    const long r = ug_sample_finite(n, p, rng);
    REQUIRE(r >= 1);
    REQUIRE(r <= n);
    ++hist[static_cast<std::size_t>(r - 1)];
  }
  // Pool the tail until each bin expects at least 5.
  double chi2 = 0.0;
  *df = -1;
  double e = 0.0;
  double o = 0.0;
  for (long i = 0; i < n; ++i) {
    e += expected[static_cast<std::size_t>(i)];
    o += hist[static_cast<std::size_t>(i)];
    if (e >= 5.0 || i == n - 1) {
      chi2 += (o - e) * (o - e) / e;
      ++*df;
      e = 0.0;
      o = 0.0;
    }
  }
  return chi2;
}

/// q0 -> q1 -> q2 with true guards, q2 accepting with a self loop.
Nba chain3()
{
  Nba nba(3);
  nba.add_initial(0);
  nba.add_accepting(2);
  nba.add_transition(0, PropFormula::make_true(), 1);
  nba.add_transition(1, PropFormula::make_true(), 2);
  nba.add_transition(2, PropFormula::make_true(), 2);
  return nba;
}

/// Waits for pi(1,1), then accepts forever.
Nba reach_region1()
{
  Nba nba(2);
  nba.add_initial(0);
  nba.add_accepting(1);
  nba.add_transition(0, PropFormula::make_true(), 0);
  nba.add_transition(0, PropFormula::atom(1, 1), 1);
  nba.add_transition(1, PropFormula::make_true(), 1);
  return nba;
}

}  // namespace

TEST_CASE("UG pmf")
{
  CHECK(ug_pmf(1, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(ug_pmf(0, 0.5) == 0.0);
  CHECK(ug_pmf(1, 1.0) == 1.0);
  CHECK(ug_pmf(2, 1.0) == 0.0);
  for (double p : {0.1, 0.5, 0.9}) {
    // Closed form for rank 1, then the recurrence.
    double rec = -p * std::log(p) / (1.0 - p);
    double total = 0.0;
    for (long i = 1; i <= 100; ++i) {
      CHECK(std::abs(rec - ug_double_sum(i, p)) < 1e-9);
      CHECK(std::abs(ug_pmf(i, p) - ug_double_sum(i, p)) < 1e-9);
      if (i > 1) {
        CHECK(ug_pmf(i, p) <= ug_pmf(i - 1, p));
      }
      total += ug_pmf(i, p);
      rec -= p * std::pow(1.0 - p, static_cast<double>(i - 1)) / static_cast<double>(i);
    }
    CHECK(total <= 1.0 + 1e-12);
    if (p >= 0.5) {
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  // Neighbouring ranks even out as p goes to 0.
  double last = 0.0;
  for (double p : {0.1, 0.01, 1e-4, 1e-6}) {
    const double ratio = ug_pmf(2, p) / ug_pmf(1, p);
    CHECK(ratio > last);
    CHECK(ratio < 1.0);
    CHECK(ug_pmf(2, p) == doctest::Approx(-p * std::log(p) / (1.0 - p) - p).epsilon(1e-9));
    last = ratio;
  }
  CHECK(last > 0.9);
}

TEST_CASE("UG finite sampling fits the renormalized pmf")
{
  Rng rng(2026);
  for (double p : {0.1, 0.5, 0.9}) {
    for (long n : {1L, 7L, 40L}) {
      int df = 0;
      const double chi2 = chi2_of_ranks(n, p, 100000, rng, &df);
      if (df <= 0) {
        continue;
      }
      INFO("p=" << p << " n=" << n << " df=" << df);
      CHECK(chi2 < chi2_crit_1pct(df));
    }
  }
  CHECK(ug_sample_finite(1, 0.3, rng) == 1);
  CHECK(ug_sample_finite(50, 1.0, rng) == 1);
  // A tiny p still terminates and stays in range.
  for (int k = 0; k < 100; ++k) {
    const long r = ug_sample_finite(5, 1e-9, rng);
    CHECK(r >= 1);
    CHECK(r <= 5);
  }
}

TEST_CASE("D_min tracker matches a full scan")
{
  const Workspace w = fixtures::small_workspace();
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n_q = 2 + static_cast<int>(rng.below(5));
    Nba nba(n_q);
    nba.add_initial(0);
    std::vector<int> metric(static_cast<std::size_t>(n_q));
    for (auto & m : metric) {
      m = rng.bernoulli(0.2) ? DistanceTable::kInf : static_cast<int>(rng.below(6));
    }
    Tree t(w, nba, {{0.3, 0.3}, 0});
    DminTracker dmin(metric);
    for (int step = 0; step < 30; ++step) {
      const int adds = static_cast<int>(rng.below(4));
      for (int k = 0; k < adds; ++k) {
        t.add({rng.uniform(0.0, 0.3), rng.uniform(0.0, 0.3)}, static_cast<int>(rng.below(static_cast<std::uint64_t>(n_q))), 0,
              1.0);
      }
      dmin.update(t);
      int best = DistanceTable::kInf;
      for (const auto & nd : t.nodes()) {
        best = std::min(best, metric[static_cast<std::size_t>(nd.state.q)]);
      }
      std::vector<int> in, out;
      for (int i = 0; i < t.size(); ++i) {
        (metric[static_cast<std::size_t>(t.node(i).state.q)] == best ? in : out).push_back(i);
      }
      CHECK(dmin.value() == best);
      CHECK(dmin.members() == in);
      CHECK(dmin.others() == out);
    }
  }
}

TEST_CASE("sample_closest honours p_closest and favours new nodes")
{
  const Workspace w = fixtures::small_workspace();
  Nba nba(2);
  nba.add_initial(0);
  Tree t(w, nba, {{0.3, 0.3}, 0});
  for (int i = 0; i < 30; ++i) {
    t.add({0.3, 0.3 + 0.001 * (i + 1)}, i % 3 == 0 ? 1 : 0, 0, 1.0);
  }
  DminTracker dmin({1, 0});
  dmin.update(t);
  REQUIRE(dmin.members().size() == 10);
  BiasParams prm;
  Rng rng(12);
  const int draws = 100000;
  int hits = 0;
  std::map<int, int> count;
  for (int k = 0; k < draws; ++k) {
    const int id = sample_closest(dmin, prm, rng);
    ++count[id];
    if (t.node(id).state.q == 1) {
      ++hits;
    }
  }
  CHECK(static_cast<double>(hits) / draws == doctest::Approx(prm.p_closest).epsilon(0.02 / prm.p_closest));
  // The newest member is the mode.
  const int newest = dmin.members().back();
  for (int id : dmin.members()) {
    CHECK(count[id] <= count[newest]);
  }

  // With only one side populated every draw goes there.
  DminTracker solo({0, 0});
  solo.update(t);
  for (int k = 0; k < 100; ++k) {
    const int id = sample_closest(solo, prm, rng);
    CHECK(std::binary_search(solo.members().begin(), solo.members().end(), id));
  }
}

TEST_CASE("successor selection")
{
  const Nba nba = fixtures::fig9_nba();
  const DistanceTable dist(nba);
  Rng rng(1);
  const auto pair = select_successors(nba, dist, 2, 0, {}, rng);
  REQUIRE(pair.has_value());
  CHECK(*pair == std::make_pair(0, 2));
  CHECK(distance_from(dist, 2, 2) == 1);
  CHECK(distance_from(dist, 0, 2) == 1);
  // Labels that jump straight into the target still yield a pair, which
  // continues around the accepting cycle.
  const LabelSet ab{{1, 1}, {2, 2}};
  std::set<std::pair<int, int>> direct;
  for (int k = 0; k < 50; ++k) {
    direct.insert(*select_successors(nba, dist, 2, 0, ab, rng));
  }
  CHECK(direct == std::set<std::pair<int, int>>{{2, 2}});
  Nba only(2);
  only.add_initial(0);
  only.add_accepting(1);
  only.add_transition(0, PropFormula::atom(1, 1), 1);
  only.add_transition(1, PropFormula::make_true(), 0);
  const DistanceTable od(only);
  CHECK(select_successors(only, od, 1, 0, LabelSet{{1, 1}}, rng) == std::make_pair(1, 0));
  CHECK_FALSE(select_successors(only, od, 1, 0, {}, rng).has_value());

  // Random automata: returned pairs obey both hops and the strict tier wins.
  const std::vector<AtomicProp> atoms{{1, 1}, {1, 2}, {2, 1}};
  Rng gen(77);
  int seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(gen.below(7));
    const Nba a = oracle::random_nba(gen, n, atoms, 0.35);
    const DistanceTable d(a);
    const int target = static_cast<int>(gen.below(static_cast<std::uint64_t>(n)));
    const int q = static_cast<int>(gen.below(static_cast<std::uint64_t>(n)));
    const LabelSet labels = oracle::assignment(atoms, static_cast<unsigned>(gen.below(8)));
    const int d0 = distance_from(d, q, target);
    std::set<std::pair<int, int>> strict, equal;
    for (int s1 = 0; s1 < n; ++s1) {
      const auto tr = a.find_transition(q, s1);
      if (!tr || !oracle::eval(tr->guard, labels)) {
        continue;
      }
      const int d1 = d.rho(s1, target);
      if (d1 == DistanceTable::kInf || d1 > d0) {
        continue;
      }
      const int from_s1 = s1 == target ? oracle::cycle_length(oracle::adjacency(a), s1) : d1;
      for (int s2 = 0; s2 < n; ++s2) {
        if (a.find_transition(s1, s2) && d.rho(s2, target) < from_s1) {
          (d1 < d0 ? strict : equal).insert({s1, s2});
        }
      }
    }
    const auto got = select_successors(a, d, target, q, labels, gen);
    const auto & tier = strict.empty() ? equal : strict;
    CHECK(got.has_value() == !tier.empty());
    if (got) {
      ++seen;
      CHECK(tier.count(*got) == 1);
    }
  }
  CHECK(seen > 20);
}

TEST_CASE("clause selection and region assignment")
{
  const Dnf dnf = to_dnf(parse_prop("(pi(1,2) && pi(2,3)) || pi(3,1) || (pi(1,1) && pi(2,2) && !pi(3,3))"));
  Rng rng(3);
  const DnfClause shortest = select_clause(dnf, ClauseMode::kMinLength, rng);
  CHECK(shortest.positives == std::vector<AtomicProp>{{3, 1}});
  std::set<DnfClause> picked;
  for (int k = 0; k < 200; ++k) {
    picked.insert(select_clause(dnf, ClauseMode::kRandom, rng));
  }
  CHECK(picked.size() == dnf.size());
  CHECK_THROWS_AS(select_clause({}, ClauseMode::kRandom, rng), std::invalid_argument);
  CHECK(clause_mode_from_string("min-length") == ClauseMode::kMinLength);
  CHECK_THROWS_AS(clause_mode_from_string("short"), std::invalid_argument);

  const auto as = region_assignment(dnf[0].positives.size() == 2 ? dnf[0] : dnf[1], 3);
  CHECK(as.size() == 3);
  DnfClause c;
  c.positives = {{1, 2}, {3, 1}};
  c.negatives = {{2, 2}};
  const auto r = region_assignment(c, 3);
  CHECK(r[0] == 2);
  CHECK_FALSE(r[1].has_value());
  CHECK(r[2] == 1);
  c.positives = {{1, 2}, {1, 1}};
  CHECK_THROWS_AS(region_assignment(c, 3), std::invalid_argument);
  c.positives = {{4, 1}};
  CHECK_THROWS_AS(region_assignment(c, 3), std::invalid_argument);
}

TEST_CASE("bias parameters validate")
{
  BiasParams p;
  CHECK_NOTHROW(p.validate());
  p.p_closest = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.y_rand = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.p_ug = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.sigma_d = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("biased sampler")
{
  const Workspace w = fixtures::small_workspace(2);
  const VisibilityGraph vis(w);

  SUBCASE("unconstrained robots idle")
  {
    const Nba nba = chain3();
    const DistanceTable dist(nba);
    Tree t(w, nba, {{0.3, 0.3, 0.7, 0.3}, 0});
    BiasedSampler s(t, dist, 2, false, BiasParams{}, vis, 1, 0);
    for (int k = 0; k < 50; ++k) {
      const auto b = s.sample();
      REQUIRE(b.has_value());
      CHECK(b->closest == 0);
      CHECK(b->x_rand == t.node(0).state.x);
    }
    CHECK(s.counters().idle_draws == 100);
  }

  SUBCASE("targeted robot heads for its region")
  {
    const Nba nba = reach_region1();
    const DistanceTable dist(nba);
    const JointState x0{0.3, 0.15, 0.7, 0.3};
    Tree t(w, nba, {x0, 0});
    BiasParams prm;
    BiasedSampler s(t, dist, 1, false, prm, vis, 5, 0);
    const int n = 10000;
    int aligned = 0;
    for (int k = 0; k < n; ++k) {
      const auto b = s.sample();
      REQUIRE(b.has_value());
      // Robot 2 is unconstrained and idles.
      CHECK(robot_pos(b->x_rand, 1) == robot_pos(x0, 1));
      const Vec2 d = robot_pos(b->x_rand, 0) - robot_pos(x0, 0);
      // The region centroid lies straight to the left.
      const double dev = std::abs(std::remainder(std::atan2(d.y, d.x) - M_PI, 2.0 * M_PI));
      if (dev < 3.0 * prm.sigma_alpha) {
        ++aligned;
      }
    }
    const auto & c = s.counters();
    CHECK(c.uniform_draws > 0);
    CHECK(c.gaussian_draws + c.uniform_draws == n);
    CHECK(static_cast<double>(aligned) / n > 0.97);
    CHECK(c.skips == 0);
  }

  SUBCASE("no progress means a skip")
  {
    // The accepting state is unreachable from q0.
    Nba nba(2);
    nba.add_initial(0);
    nba.add_accepting(1);
    nba.add_transition(0, PropFormula::make_true(), 0);
    nba.add_transition(1, PropFormula::make_true(), 1);
    const DistanceTable dist(nba);
    Tree t(w, nba, {{0.3, 0.3, 0.7, 0.3}, 0});
    BiasedSampler s(t, dist, 1, false, BiasParams{}, vis, 1, 0);
    CHECK_FALSE(s.sample().has_value());
    CHECK(s.counters().skips == 1);
  }

  SUBCASE("grower reaches the region")
  {
    const Nba nba = reach_region1();
    const DistanceTable dist(nba);
    Tree t(w, nba, {{0.7, 0.2, 0.7, 0.3}, 0});
    BiasedSampler s(t, dist, 1, false, BiasParams{}, vis, 9, 0);
    BiasedGrower g(t, s, RadiusSchedule::practical(free_measure(w), 4, 0.5));
    bool reached = false;
    for (int k = 0; k < 500 && !reached; ++k) {
      for (int id : g.iterate()) {
        reached = reached || nba.is_accepting(t.node(id).state.q);
      }
    }
    CHECK(reached);
    InvariantChecker chk;
    chk.check(t);
    CHECK(chk.report().violations == 0);
  }
}

TEST_CASE("suffix cycle closure")
{
  const Workspace w = fixtures::small_workspace();
  Rng rng(31);
  CycleCloseParams prm;

  const auto same = suffix_cycle_close(w, {0.3, 0.3}, {0.3, 0.3}, prm, rng);
  REQUIRE(same.ok);
  CHECK(same.waypoints.size() == 1);

  const auto straight = suffix_cycle_close(w, {0.3, 0.3}, {0.7, 0.3}, prm, rng);
  REQUIRE(straight.ok);
  CHECK(straight.waypoints == std::vector<JointState>{{0.3, 0.3}, {0.7, 0.3}});

  // Around the block: the geodesic passes two obstacle corners.
  prm.iterations = 2000;
  const double geo = 0.2 + 2.0 * std::hypot(0.1, 0.1);
  const auto around = suffix_cycle_close(w, {0.3, 0.5}, {0.7, 0.5}, prm, rng);
  REQUIRE(around.ok);
  CHECK(polyline_length(around.robot_paths[0]) >= geo - 1e-9);
  CHECK(polyline_length(around.robot_paths[0]) <= 1.1 * geo);
  for (std::size_t k = 1; k < around.waypoints.size(); ++k) {
    const Vec2 a = robot_pos(around.waypoints[k - 1], 0);
    const Vec2 b = robot_pos(around.waypoints[k], 0);
    CHECK(segment_free(w, a, b));
    CHECK(labels_of(w, around.waypoints[k]).empty());
  }

  const auto bad = suffix_cycle_close(w, {0.15, 0.15}, {0.7, 0.3}, prm, rng);
  CHECK_FALSE(bad.ok);
  CHECK(bad.diagnostic.find("robot 1") != std::string::npos);

  // Leaving the start region is allowed on request; other regions stay blocked.
  CycleCloseParams loose = prm;
  loose.allow_endpoint_regions = true;
  const auto out = suffix_cycle_close(w, {0.15, 0.15}, {0.95, 0.85}, loose, rng);
  REQUIRE(out.ok);
  const auto & path = out.robot_paths[0];
  for (std::size_t k = 1; k < path.size(); ++k) {
    CHECK(robot_transition_valid(w, path[k - 1], path[k]));
    CHECK_FALSE(segment_hits_interior(w.region(2).polygon, path[k - 1], path[k]));
  }
  CHECK_FALSE(suffix_cycle_close(w, {0.5, 0.5}, {0.95, 0.85}, loose, rng).ok);

  // Two robots: the shorter path idles at its goal.
  const Workspace w2 = fixtures::small_workspace(2);
  const auto pair = suffix_cycle_close(w2, {0.3, 0.5, 0.3, 0.3}, {0.7, 0.5, 0.7, 0.3}, prm, rng);
  REQUIRE(pair.ok);
  CHECK(robot_pos(pair.waypoints.back(), 0) == Vec2{0.7, 0.5});
  CHECK(robot_pos(pair.waypoints.back(), 1) == Vec2{0.7, 0.3});
  CHECK(pair.waypoints.size() == pair.robot_paths[0].size());
}
