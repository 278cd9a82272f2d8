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

#include "tlrrt/scenario.hpp"

#include <algorithm>
#include <stdexcept>

#include "tlrrt/rng.hpp"

namespace tlrrt
{

namespace
{

struct Anchor
{
  double x;
  double y;
  double dx;
  double dy;
};

// Right-angle corner and leg directions of the six triangles.
constexpr Anchor kAnchors[6] = {
    {0.10, 0.60, 1.0, 1.0},  {0.40, 0.95, 1.0, -1.0}, {0.90, 0.80, -1.0, -1.0},
    {0.05, 0.05, 1.0, 1.0},  {0.55, 0.05, 1.0, 1.0},  {0.05, 0.35, 1.0, 1.0},
};

Polygon rect(double x0, double y0, double x1, double y1) { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }

template <typename T>
void shuffle(std::vector<T> & v, Rng & rng)
{
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[static_cast<std::size_t>(rng.below(i))]);
  }
}

}  // namespace

Workspace fixture_workspace(int n_robots, double side, double min_separation)
{
  if (!(side > 0.0 && side <= 0.25)) {
    throw std::invalid_argument("region side must lie in (0, 0.25]");
  }
  std::vector<Obstacle> obstacles{{"o1", rect(0.35, 0.25, 0.50, 0.50)}, {"o2", rect(0.60, 0.45, 0.80, 0.60)}};
  std::vector<Region> regions;
  for (int j = 0; j < 6; ++j) {
    const Anchor & a = kAnchors[j];
    regions.push_back({j + 1, {{a.x, a.y}, {a.x + a.dx * side, a.y}, {a.x, a.y + a.dy * side}}});
  }
  return Workspace({0.0, 0.0, 1.0, 1.0}, std::move(obstacles), std::move(regions), n_robots, min_separation);
}

std::string case1_formula()
{
  return "<>(pi(1,1) && <> pi(1,3)) && (!pi(1,1) U pi(1,2)) && <>(pi(1,5) && <>(pi(1,6) && <> pi(1,4))) && "
         "(!pi(1,4) U pi(1,5))";
}

std::string case2_formula()
{
  return "[]<> pi(1,1) && []<> pi(2,2) && [](<> (pi(1,4) && <> pi(2,4)))";
}

Scenario case1(double side)
{
  Scenario s{fixture_workspace(1, side), {}};
  s.task.formula = case1_formula();
  s.task.initial = {{0.8, 0.1}};
  return s;
}

Scenario case2(double side)
{
  Scenario s{fixture_workspace(2, side), {}};
  s.task.formula = case2_formula();
  s.task.initial = {{0.8, 0.1}, {0.82, 0.1}};
  return s;
}

Scenario scatter(int n_robots, int m, std::uint64_t seed, double side)
{
  constexpr int kSubformulas = 8;
  if (n_robots < 1 || m < 1 || m > n_robots || kSubformulas * m < n_robots) {
    throw std::invalid_argument("scatter needs 1 <= m <= N and N <= 8m");
  }
  Rng rng = make_rng(seed, RngSite::kScenario);
  Scenario s{fixture_workspace(n_robots, side), {}};

  // Slots (e, k) are filled in order; the first N take a permutation of the
  // robots so everyone is covered, the rest draw robots not yet in xi_e.
  std::vector<int> robots(static_cast<std::size_t>(n_robots));
  for (int i = 0; i < n_robots; ++i) {
    robots[static_cast<std::size_t>(i)] = i + 1;
  }
  shuffle(robots, rng);
  std::vector<std::vector<int>> team(kSubformulas);
  int slot = 0;
  for (int e = 0; e < kSubformulas; ++e) {
    for (int k = 0; k < m; ++k, ++slot) {
      auto & t = team[static_cast<std::size_t>(e)];
      if (slot < n_robots) {
        t.push_back(robots[static_cast<std::size_t>(slot)]);
        continue;
      }
      std::vector<int> pool;
      for (int r = 1; r <= n_robots; ++r) {
        if (std::find(t.begin(), t.end(), r) == t.end()) {
          pool.push_back(r);
        }
      }
      t.push_back(pool[static_cast<std::size_t>(rng.below(pool.size()))]);
    }
  }
  std::vector<std::string> xi;
  for (auto & t : team) {
    std::sort(t.begin(), t.end());
    std::string conj;
    for (int r : t) {
      const int region = 1 + static_cast<int>(rng.below(6));
      conj += (conj.empty() ? "" : " && ") + std::string("pi(") + std::to_string(r) + "," + std::to_string(region) +
              ")";
    }
    xi.push_back(conj);
  }
  auto paren = [&xi](int e) { return "(" + xi[static_cast<std::size_t>(e - 1)] + ")"; };
  s.task.formula = "[]<> " + paren(1) + " && []<> " + paren(2) + " && []<> " + paren(3) + " && []<> (" + paren(4) +
                   " && <> (" + paren(5) + " && <> " + paren(6) + ")) && <> " + paren(7) + " && []<> " + paren(8) +
                   " && (!" + paren(7) + " U " + paren(8) + ")";
  s.task.subformulas = xi;

  const Workspace & w = s.workspace;
  for (int i = 0; i < n_robots; ++i) {
    for (long attempt = 0;; ++attempt) {
      if (attempt > 100000) {
        throw std::runtime_error("scatter: cannot place robot " + std::to_string(i + 1));
      }
      const Vec2 p{rng.uniform(), rng.uniform()};
      if (!point_free(w, p) || region_of(w, p)) {
        continue;
      }
      const bool apart = std::all_of(s.task.initial.begin(), s.task.initial.end(),
                                     [&](const Vec2 & q) { return separated(w, p, q); });
      if (apart) {
        s.task.initial.push_back(p);
        break;
      }
    }
  }
  return s;
}

}  // namespace tlrrt
