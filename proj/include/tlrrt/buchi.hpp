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

#ifndef TLRRT_BUCHI_HPP_
#define TLRRT_BUCHI_HPP_

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlrrt/formula.hpp"

namespace tlrrt
{

struct NbaTransition
{
  int src = 0;
  PropFormula guard;
  Dnf dnf;  // cached to_dnf(guard), subsumption-free
  int dst = 0;
};

/// Nondeterministic Buchi automaton with propositional guards.
///
/// At most one transition per (src, dst) pair: adding a second one merges the
/// guards by disjunction. Transitions with unsatisfiable guards are not stored.
class Nba
{
public:
  Nba() = default;
  explicit Nba(int n_states);

  int add_state();
  int num_states() const { return n_states_; }

  void add_initial(int q);
  void add_accepting(int q);
  const std::vector<int> & initial() const { return initial_; }
  const std::vector<int> & accepting() const { return accepting_; }
  bool is_initial(int q) const;
  bool is_accepting(int q) const { return accepting_flag_.at(static_cast<std::size_t>(q)); }

  void add_transition(int src, const PropFormula & guard, int dst);
  void add_transition(int src, const Dnf & guard, int dst);

  const std::vector<NbaTransition> & transitions() const { return transitions_; }
  /// Indices into transitions() leaving q, ordered by destination.
  const std::vector<int> & out_edges(int q) const { return out_.at(static_cast<std::size_t>(q)); }
  const NbaTransition * find_transition(int src, int dst) const;

  /// Successors of q whose guard holds under `labels`, ascending.
  std::vector<int> step(int q, const LabelSet & labels) const;

private:
  void check_state(int q) const;

  int n_states_ = 0;
  std::vector<int> initial_;
  std::vector<int> accepting_;
  std::vector<bool> accepting_flag_;
  std::vector<NbaTransition> transitions_;
  std::vector<std::vector<int>> out_;
};

std::vector<int> buchi_step(const Nba & nba, int q, const LabelSet & labels);

/// Does some run over prefix . cycle^omega visit an accepting state infinitely often?
bool accepts_lasso(const Nba & nba, const std::vector<LabelSet> & prefix,
                   const std::vector<LabelSet> & cycle);

/// Hop distances between Buchi states.
class DistanceTable
{
public:
  static constexpr int kInf = std::numeric_limits<int>::max();

  DistanceTable() = default;
  explicit DistanceTable(const Nba & nba);

  /// Shortest hop count from a to b; 0 when a == b, kInf if unreachable.
  int rho(int a, int b) const { return rho_[idx(a, b)]; }
  /// Length of the shortest nonempty cycle through q, kInf if none.
  int cycle(int q) const { return cycle_.at(static_cast<std::size_t>(q)); }
  int size() const { return n_; }

private:
  std::size_t idx(int a, int b) const
  {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b);
  }

  int n_ = 0;
  std::vector<int> rho_;
  std::vector<int> cycle_;
};

inline DistanceTable distance_table(const Nba & nba) { return DistanceTable(nba); }

/// Accepting states reachable from q0 that lie on a cycle.
std::vector<int> feasible_accepting(const Nba & nba, const DistanceTable & dist, int q0);

/// disjoint[j-1][k-1] is true when regions j and k have disjoint closures.
using RegionDisjointness = std::vector<std::vector<bool>>;

/// Drops guard clauses that put one robot in two disjoint regions.
Nba prune(const Nba & nba, const RegionDisjointness & disjoint);

/// Removes transitions whose every clause asks two or more of the given
/// subformulas (conjunctions of atoms) to hold at once.
Nba prune_multi_subformula(const Nba & nba, const std::vector<PropFormula> & subformulas);

/// Keeps states reachable from an initial state and able to reach an
/// accepting cycle, renumbered in ascending order of the old index.
Nba trim(const Nba & nba);

class TranslationOverflowError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultStateCap = 100000;

/// Tableau translation of a Next-free formula into an NBA.
Nba ltl_to_nba(const LtlFormula & f, std::size_t max_states = kDefaultStateCap);

class HoaError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Maps HOA AP names to atoms. Empty map: names must read as pi(i,j).
using ApMap = std::map<std::string, AtomicProp>;

Nba parse_hoa(std::string_view text, const ApMap & ap_map = {});
std::string to_hoa(const Nba & nba, const std::string & name = "");

}  // namespace tlrrt

#endif  // TLRRT_BUCHI_HPP_
