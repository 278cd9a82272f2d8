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

#ifndef TLRRT_TESTS_FIXTURES_HPP_
#define TLRRT_TESTS_FIXTURES_HPP_

#include <vector>

#include "tlrrt/buchi.hpp"
#include "tlrrt/formula.hpp"
#include "tlrrt/geometry.hpp"

namespace fixtures
{

/// Three-state automaton for []<> pi(1,1) && []<> pi(2,2), drawn after the
/// worked example: q0 initial, q2 accepting.
inline tlrrt::Nba fig9_nba()
{
  using tlrrt::PropFormula;
  const auto a = PropFormula::atom(1, 1);
  const auto b = PropFormula::atom(2, 2);
  tlrrt::Nba nba(3);
  nba.add_initial(0);
  nba.add_accepting(2);
  nba.add_transition(0, PropFormula::make_true(), 0);
  nba.add_transition(0, a && !b, 1);
  nba.add_transition(0, a && b, 2);
  nba.add_transition(1, !b, 1);
  nba.add_transition(1, b, 2);
  nba.add_transition(2, PropFormula::make_true(), 0);
  nba.add_transition(2, a && !b, 1);
  nba.add_transition(2, a && b, 2);
  return nba;
}

/// Every unordered pair of the given atoms; a single atom or none yields
/// one group with what there is.
inline std::vector<std::vector<tlrrt::AtomicProp>> atom_pairs(const std::vector<tlrrt::AtomicProp> & atoms)
{
  if (atoms.size() < 2) {
    return {atoms};
  }
  std::vector<std::vector<tlrrt::AtomicProp>> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      out.push_back({atoms[i], atoms[j]});
    }
  }
  return out;
}

/// Unit square, one square obstacle in the middle, two square regions.
inline tlrrt::Workspace small_workspace(int n_robots = 1, double min_sep = 0.005)
{
  using tlrrt::Polygon;
  std::vector<tlrrt::Obstacle> obstacles{{"block", Polygon{{0.4, 0.4}, {0.6, 0.4}, {0.6, 0.6}, {0.4, 0.6}}}};
  std::vector<tlrrt::Region> regions{{1, Polygon{{0.1, 0.1}, {0.2, 0.1}, {0.2, 0.2}, {0.1, 0.2}}},
                                     {2, Polygon{{0.8, 0.8}, {0.9, 0.8}, {0.9, 0.9}, {0.8, 0.9}}}};
  return tlrrt::Workspace({0.0, 0.0, 1.0, 1.0}, obstacles, regions, n_robots, min_sep);
}

}  // namespace fixtures

#endif  // TLRRT_TESTS_FIXTURES_HPP_
