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


// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tlrrt/benchmark.hpp"
#include "tlrrt/bias.hpp"
#include "tlrrt/io.hpp"
#include "tlrrt/planner.hpp"
#include "tlrrt/scenario.hpp"

using namespace tlrrt;

namespace
{

using Clock = std::chrono::steady_clock;

struct Outcome
{
  bool pass = false;
  std::string detail;
};

std::string fmt(const char * f, double a)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

double mean(const std::vector<double> & v)
{
  double s = 0.0;
  for (double x : v) {
    s += x;
  }
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

/// Invariant checks collected from every planner run in criteria 1 to 5.
struct Tally
{
  long runs = 0;
  long checks = 0;
  long violations = 0;
  std::vector<std::string> messages;

  void add(const RunStats & s)
  {
    ++runs;
    checks += s.invariant_checks;
    violations += s.invariant_violations;
    for (const auto & m : s.invariant_messages) {
      if (messages.size() < 5) {
        messages.push_back(m);
      }
    }
  }
};

Tally g_tally;

struct Problem
{
  Scenario scenario;
  Nba nba;
  LtlFormula formula;
  std::vector<PropFormula> subformulas;
};

Problem make_problem(Scenario s)
{
  Problem p{std::move(s), {}, parse_ltl("true"), {}};
  p.formula = parse_ltl(p.scenario.task.formula);
  p.nba = ltl_to_nba(p.formula);
  for (const auto & x : p.scenario.task.subformulas) {
    p.subformulas.push_back(parse_prop(x));
  }
  return p;
}

PlanResult solve(const Problem & pr, PlannerParams p)
{
  p.subformulas = pr.subformulas;
  PlanResult r = plan(pr.scenario.workspace, pr.nba, initial_state(pr.scenario.task), p);
  g_tally.add(r.stats);
  return r;
}

/// Lasso semantics of the formula on the plan trace, computed without the
/// automaton.
bool trace_satisfies(const Problem & pr, const Plan & plan)
{
  const Workspace & w = pr.scenario.workspace;
  std::vector<LabelSet> prefix;
  for (std::size_t k = 0; k + 1 < plan.prefix.size(); ++k) {
    prefix.push_back(labels_of(w, plan.prefix[k]));
  }
  std::vector<LabelSet> cycle{labels_of(w, plan.prefix.back())};
  for (const auto & y : plan.suffix) {
    cycle.push_back(labels_of(w, y));
  }
  return oracle::LassoEvaluator(prefix, cycle).holds(pr.formula);
}

// 1 -------------------------------------------------------------------------

Outcome soundness()
{
  int returned = 0;
  int verified = 0;
  int semantic = 0;
  const auto start = Clock::now();
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(k);
    Scenario s;
    switch (k % 4) {
      case 0:
        s = case1();
        break;
      case 1:
        s = case2();
        break;
      case 2:
        s = scatter(2, 1, seed);
        break;
      default:
        s = scatter(4, 1, seed);
        break;
    }
    const Problem pr = make_problem(std::move(s));
    PlannerParams p;
    p.mode = (k / 4) % 2 == 0 ? PlannerMode::kUnbiased : PlannerMode::kBiased;
    p.n_max_pre = 1000;
    p.n_max_suf = 1000;
    p.time_limit = 10.0;
    p.seed = seed;
    const PlanResult r = solve(pr, p);
    if (!r.plan) {
      continue;
    }
    ++returned;
    verified += verify_plan(*r.plan, pr.nba, pr.scenario.workspace).ok() ? 1 : 0;
    semantic += trace_satisfies(pr, *r.plan) ? 1 : 0;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = returned > 0 && verified == returned && semantic == returned && secs < 1200.0;
  o.detail = std::to_string(returned) + "/100 runs returned a plan, " + std::to_string(verified) + "/" +
             std::to_string(returned) + " pass verify_plan, " + std::to_string(semantic) + "/" +
             std::to_string(returned) + " satisfy the formula on the trace, " + fmt("%.0f s", secs);
  return o;
}

// 2 and 3 -------------------------------------------------------------------

struct Case1Batch
{
  std::vector<double> j600;
  std::vector<double> j1000;
  std::vector<double> p_practical;
  std::vector<double> p_optimal;
};

PlannerParams table1_params(long n_pre, std::uint64_t seed)
{
  PlannerParams p;
  p.mode = PlannerMode::kUnbiased;
  p.radius_mode = RadiusMode::kPractical;
  p.w = 0.2;
  p.eta = 0.25;
  p.n_max_pre = n_pre;
  p.n_max_suf = 1000;
  p.seed = seed;
  return p;
}

const Case1Batch & case1_batch()
{
  static const Case1Batch b = [] {
    Case1Batch out;
    const Problem pr = make_problem(case1());
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto a = solve(pr, table1_params(600, seed));
      const auto c = solve(pr, table1_params(1000, seed));
      PlannerParams opt = table1_params(1000, seed);
      opt.radius_mode = RadiusMode::kOptimal;
      const auto o = solve(pr, opt);
      if (a.plan) {
        out.j600.push_back(a.plan->cost);
      }
      if (c.plan) {
        out.j1000.push_back(c.plan->cost);
      }
      out.p_practical.push_back(c.stats.n_goal);
      out.p_optimal.push_back(o.stats.n_goal);
    }
    return out;
  }();
  return b;
}

Outcome cost_trend()
{
  const auto & b = case1_batch();
  const double m600 = mean(b.j600);
  const double m1000 = mean(b.j1000);
  // Means over the seeds that found a plan; a few budget misses at n = 600
  // are expected.
  Outcome o;
  o.pass = b.j600.size() >= 10 && b.j1000.size() >= 10 && m1000 <= m600 && m1000 >= 0.46 && m1000 <= 0.59;
  o.detail = "mean J(600) = " + fmt("%.4f", m600) + " (" + std::to_string(b.j600.size()) +
             "/20 found), mean J(1000) = " + fmt("%.4f", m1000) + " (" + std::to_string(b.j1000.size()) +
             "/20 found, gate [0.46, 0.59])";
  return o;
}

Outcome radius_comparison()
{
  const auto & b = case1_batch();
  const double opt = mean(b.p_optimal);
  const double prac = mean(b.p_practical);
  Outcome o;
  o.pass = opt >= prac;
  o.detail = "mean |P| optimal = " + fmt("%.2f", opt) + ", practical = " + fmt("%.2f", prac);
  return o;
}

// 4 and 5 -------------------------------------------------------------------

PlannerParams first_feasible(PlannerMode mode, std::uint64_t seed, double limit)
{
  PlannerParams p;
  p.mode = mode;
  p.first_feasible = true;
  p.n_max_pre = 1000000;
  p.n_max_suf = 1000000;
  p.time_limit = limit;
  p.seed = seed;
  return p;
}

Outcome bias_speedup()
{
  const Problem pr = make_problem(case2(0.25));
  std::vector<double> tb, tu, jb, ju;
  int missing = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto b = solve(pr, first_feasible(PlannerMode::kBiased, seed, 120.0));
    const auto u = solve(pr, first_feasible(PlannerMode::kUnbiased, seed, 120.0));
    if (!b.plan || !u.plan) {
      ++missing;
      continue;
    }
    tb.push_back(b.stats.seconds_to_first_plan);
    tu.push_back(u.stats.seconds_to_first_plan);
    jb.push_back(b.plan->cost);
    ju.push_back(u.plan->cost);
  }
  Outcome o;
  o.pass = missing == 0 && mean(tb) <= mean(tu) / 5.0 && mean(jb) <= mean(ju);
  o.detail = "time to first plan biased " + fmt("%.4f s", mean(tb)) + " vs unbiased " + fmt("%.4f s", mean(tu)) +
             " (ratio " + fmt("%.1f", mean(tu) / std::max(mean(tb), 1e-12)) + "), mean J biased " +
             fmt("%.3f", mean(jb)) + " vs unbiased " + fmt("%.3f", mean(ju)) + ", " + std::to_string(missing) +
             " seeds without a plan";
  return o;
}

Outcome small_regions()
{
  const Problem pr = make_problem(case2(0.10));
  int ok = 0;
  std::vector<double> t;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = solve(pr, first_feasible(PlannerMode::kBiased, seed, 60.0));
    if (r.plan && r.stats.seconds_to_first_plan <= 60.0) {
      ++ok;
      t.push_back(r.stats.seconds_to_first_plan);
    }
  }
  Outcome o;
  o.pass = ok >= 9;
  o.detail = std::to_string(ok) + "/10 plans within 60 s, mean time " + fmt("%.3f s", mean(t));
  return o;
}

// 6 -------------------------------------------------------------------------

Outcome automaton_oracles()
{
  int bad = 0;
  long words = 0;
  Rng rng(21);
  const std::vector<AtomicProp> atoms{{1, 1}, {2, 2}};
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const Nba nba = oracle::random_nba(rng, n, atoms, 0.2);
    const DistanceTable d(nba);
    const auto adj = oracle::adjacency(nba);
    for (int a = 0; a < n; ++a) {
      const auto row = oracle::bfs(adj, a);
      for (int b = 0; b < n; ++b) {
        bad += d.rho(a, b) == row[static_cast<std::size_t>(b)] ? 0 : 1;
      }
      bad += d.cycle(a) == oracle::cycle_length(adj, a) ? 0 : 1;
    }
  }
  const int table_bad = bad;

  std::vector<LtlFormula> formulas{parse_ltl(case1_formula()), parse_ltl(case2_formula()),
                                   parse_ltl("[]<> pi(1,1) && []<> pi(2,2)"),
                                   parse_ltl("!pi(1,1) U pi(2,2)"),
                                   parse_ltl("<>[] pi(1,1) || []<> !pi(2,2)"),
                                   parse_ltl("[] (!pi(1,1) || <> pi(2,2))")};
  Rng frng(23);
  const std::vector<AtomicProp> three{{1, 1}, {2, 2}, {1, 3}};
  for (int k = 0; k < 20; ++k) {
    formulas.push_back(oracle::random_ltl(frng, three, 4));
  }
  int lang_bad = 0;
  for (const auto & f : formulas) {
    const Nba nba = ltl_to_nba(f);
    for (const auto & pair : fixtures::atom_pairs(atoms_of(f))) {
      oracle::for_each_lasso(pair, 6, [&](const auto & pre, const auto & cyc) {
        ++words;
        lang_bad += accepts_lasso(nba, pre, cyc) == oracle::LassoEvaluator(pre, cyc).holds(f) ? 0 : 1;
      });
    }
  }

  const Nba fig9 = fixtures::fig9_nba();
  const DistanceTable d9(fig9);
  const bool example = d9.rho(0, 2) == 1 && d9.rho(1, 2) == 1 && d9.rho(2, 2) == 0;

  Outcome o;
  o.pass = table_bad == 0 && lang_bad == 0 && example;
  o.detail = std::to_string(table_bad) + " distance mismatches on 100 automata, " + std::to_string(lang_bad) +
             " language mismatches over " + std::to_string(words) + " lasso words (" +
             std::to_string(formulas.size()) + " formulas), Example 1 rho " + (example ? "exact" : "wrong");
  return o;
}

// 7 -------------------------------------------------------------------------

Outcome invariants()
{
  Outcome o;
  o.pass = g_tally.runs > 0 && g_tally.checks > 0 && g_tally.violations == 0;
  o.detail = std::to_string(g_tally.violations) + " violations in " + std::to_string(g_tally.checks) +
             " checks over " + std::to_string(g_tally.runs) + " runs";
  for (const auto & m : g_tally.messages) {
    o.detail += "; " + m;
  }
  return o;
}

// 8 -------------------------------------------------------------------------

double ug_double_sum(long i, double p)
{
  double s = 0.0;
  for (long n = i; n < 100000; ++n) {
    s += p * std::pow(1.0 - p, static_cast<double>(n - 1)) / static_cast<double>(n);
    if (std::pow(1.0 - p, static_cast<double>(n)) < 1e-18) {
      break;
    }
  }
  return s;
}

double chi2_crit_1pct(int df)
{
  // Wilson-Hilferty.
  const double z = 2.326347874;
  const double a = 2.0 / (9.0 * df);
  return df * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

Outcome ug_distribution()
{
  double worst = 0.0;
  for (double p : {0.1, 0.5, 0.9}) {
    double rec = -p * std::log(p) / (1.0 - p);
    for (long i = 1; i <= 100; ++i) {
      const double ref = ug_double_sum(i, p);
      worst = std::max({worst, std::abs(rec - ref), std::abs(ug_pmf(i, p) - ref)});
      rec -= p * std::pow(1.0 - p, static_cast<double>(i - 1)) / static_cast<double>(i);
    }
  }
  std::string fits;
  bool all_fit = true;
  Rng rng(2026);
  const long n = 40;
  const int draws = 100000;
  for (double p : {0.1, 0.5, 0.9}) {
    double z = 0.0;
    std::vector<double> e(static_cast<std::size_t>(n));
    for (long i = 1; i <= n; ++i) {
      e[static_cast<std::size_t>(i - 1)] = ug_double_sum(i, p);
      z += e[static_cast<std::size_t>(i - 1)];
    }
    std::vector<int> h(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < draws; ++k) {
      ++h[static_cast<std::size_t>(ug_sample_finite(n, p, rng) - 1)];
    }
    double chi2 = 0.0;
    int df = -1;
    double eb = 0.0;
    double ob = 0.0;
    for (long i = 0; i < n; ++i) {
      eb += draws * e[static_cast<std::size_t>(i)] / z;
      ob += h[static_cast<std::size_t>(i)];
      if (eb >= 5.0 || i == n - 1) {
        chi2 += (ob - eb) * (ob - eb) / eb;
        ++df;
        eb = 0.0;
        ob = 0.0;
      }
    }
    const double crit = chi2_crit_1pct(df);
    all_fit = all_fit && chi2 < crit;
    fits += (fits.empty() ? "" : ", ") + std::string("p=") + fmt("%.1f", p) + " chi2 " + fmt("%.1f", chi2) + "/" +
            fmt("%.1f", crit) + " (df " + std::to_string(df) + ")";
  }
  Outcome o;
  o.pass = worst <= 1e-9 && all_fit;
  o.detail = "max pmf error " + fmt("%.2e", worst) + ", " + fits;
  return o;
}

// 9 -------------------------------------------------------------------------

Outcome geometry_oracles()
{
  const Workspace w = case1().workspace;
  const Bounds & b = w.bounds();
  Rng rng(32);
  int checked = 0;
  int seg_bad = 0;
  for (int k = 0; k < 10000; ++k) {
    const Vec2 p{rng.uniform(b.xmin, b.xmax), rng.uniform(b.ymin, b.ymax)};
    Vec2 q;
    do {
      const double len = rng.uniform(0.0, 0.5);
      const double th = rng.uniform(0.0, 2.0 * M_PI);
      q = {p.x + len * std::cos(th), p.y + len * std::sin(th)};
    } while (!b.contains(q));
    if (oracle::near_degenerate(w, p, q, 1e-3)) {
      continue;
    }
    ++checked;
    seg_bad += robot_transition_valid(w, p, q) == oracle::transition_valid_by_sampling(w, p, q, 1e-4) ? 0 : 1;
  }

  const VisibilityGraph vg(w);
  const oracle::GridGeodesic grid(w, 200, 4);
  Rng grng(33);
  int pairs = 0;
  int geo_bad = 0;
  double worst = 0.0;
  while (pairs < 100) {
    const Vec2 p{grng.uniform(b.xmin, b.xmax), grng.uniform(b.ymin, b.ymax)};
    const Vec2 q{grng.uniform(b.xmin, b.xmax), grng.uniform(b.ymin, b.ymax)};
    bool clear = true;
    for (const auto & o : w.obstacles()) {
      clear = clear && !oracle::inside(o.polygon, p) && !oracle::inside(o.polygon, q) &&
              oracle::dist_to_boundary(o.polygon, p) > 0.02 && oracle::dist_to_boundary(o.polygon, q) > 0.02;
    }
    if (!clear || std::hypot(p.x - q.x, p.y - q.y) < 0.2) {
      continue;
    }
    ++pairs;
    const double len = polyline_length(vg.geodesic(p, q));
    const double ref = grid.distance(p, q);
    const double gap = std::abs(len - ref) / ref;
    worst = std::max(worst, gap);
    geo_bad += gap <= 0.02 ? 0 : 1;
  }
  Outcome o;
  o.pass = seg_bad == 0 && geo_bad == 0 && checked >= 8000;
  o.detail = std::to_string(seg_bad) + " transition mismatches on " + std::to_string(checked) +
             " segments (tangency band 1e-3), geodesic worst gap " + fmt("%.3f%%", 100.0 * worst) + " on 100 pairs";
  return o;
}

// 10 ------------------------------------------------------------------------

Outcome determinism()
{
  bool same = true;
  int compared = 0;
  const Problem p1 = make_problem(case1());
  const Problem p2 = make_problem(case2());
  const Problem p4 = make_problem(scatter(4, 1, 7));
  for (const Problem * pr : {&p1, &p2, &p4}) {
    for (PlannerMode m : {PlannerMode::kUnbiased, PlannerMode::kBiased}) {
      PlannerParams p;
      p.mode = m;
      p.n_max_pre = 600;
      p.n_max_suf = 600;
      p.seed = 77;
      p.subformulas = pr->subformulas;
      const JointState x0 = initial_state(pr->scenario.task);
      const auto a = plan(pr->scenario.workspace, pr->nba, x0, p);
      const auto b = plan(pr->scenario.workspace, pr->nba, x0, p);
      ++compared;
      same = same && a.plan.has_value() == b.plan.has_value();
      if (a.plan && b.plan) {
        same = same && plan_to_string(*a.plan) == plan_to_string(*b.plan);
      }
    }
  }
  PlannerParams bp;
  bp.mode = PlannerMode::kBiased;
  bp.first_feasible = true;
  bp.n_max_pre = 20000;
  bp.n_max_suf = 20000;
  const JointState x0 = initial_state(p2.scenario.task);
  const auto r1 = run_benchmark(p2.scenario.workspace, p2.nba, x0, bp, 5, 9, 1);
  const auto r2 = run_benchmark(p2.scenario.workspace, p2.nba, x0, bp, 5, 9, 3);
  const bool csv = report_csv(r1) == report_csv(r2);
  Outcome o;
  o.pass = same && csv;
  o.detail = std::to_string(compared) + " repeated plans " + (same ? "byte identical" : "differ") +
             ", benchmark CSV at 1 and 3 jobs " + (csv ? "byte identical" : "differs");
  return o;
}

// Scale ---------------------------------------------------------------------

Outcome scale_run()
{
  const auto start = Clock::now();
  const Problem pr = make_problem(scatter(8, 2, 1));
  PlannerParams p = first_feasible(PlannerMode::kBiased, 1, 600.0);
  p.radius_mode = RadiusMode::kZero;
  p.subformulas = pr.subformulas;
  const auto r = plan(pr.scenario.workspace, pr.nba, initial_state(pr.scenario.task), p);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = r.plan && verify_plan(*r.plan, pr.nba, pr.scenario.workspace).ok();
  Outcome o;
  o.pass = ok && secs < 600.0;
  o.detail = std::string(ok ? "verified plan" : "no plan") + " in " + fmt("%.2f s", secs) +
             (r.plan ? ", J = " + fmt("%.3f", r.plan->cost) : std::string());
  return o;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"tlrrt acceptance suite"};
  std::vector<int> only;
  app.add_option("criteria", only, "criteria to run (1-10, 11 for the N=8 scale run); default all");
  CLI11_PARSE(app, argc, argv);

  struct Entry
  {
    int id;
    const char * name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {1, "soundness", soundness},
      {2, "table I cost trend", cost_trend},
      {3, "radius schedule |P|", radius_comparison},
      {4, "bias speedup", bias_speedup},
      {5, "small regions", small_regions},
      {6, "automaton oracles", automaton_oracles},
      {8, "UG distribution", ug_distribution},
      {9, "geometry oracles", geometry_oracles},
      {10, "determinism", determinism},
      {11, "N=8 m=2 scale run", scale_run},
      // Last, so that it sees every run of criteria 1 to 5.
      {7, "tree invariants", invariants},
  };
  const std::set<int> wanted(only.begin(), only.end());
  int failed = 0;
  for (const auto & e : entries) {
    if (!wanted.empty() && wanted.count(e.id) == 0) {
      continue;
    }
    const auto t0 = Clock::now();
    const Outcome o = e.run();
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("[%s] criterion %d, %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", e.id, e.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
