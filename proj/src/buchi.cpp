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

#include "tlrrt/buchi.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <utility>

namespace tlrrt
{

namespace
{

bool includes_sorted(const std::vector<AtomicProp> & big, const std::vector<AtomicProp> & small)
{
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// (c && a) || (c && !a)  ->  c, applied until no pair resolves.
void resolve(Dnf & dnf)
{
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(dnf.begin(), dnf.end());
    dnf.erase(std::unique(dnf.begin(), dnf.end()), dnf.end());
    for (std::size_t i = 0; i < dnf.size() && !changed; ++i) {
      for (std::size_t j = 0; j < dnf.size() && !changed; ++j) {
        const auto & a = dnf[i];
        const auto & b = dnf[j];
        if (i == j || a.positives.size() != b.positives.size() + 1 ||
            a.negatives.size() + 1 != b.negatives.size()) {
          continue;
        }
        // a has atom x positive, b has it negative, all else equal.
        std::vector<AtomicProp> pa;
        std::vector<AtomicProp> nb;
        std::set_difference(a.positives.begin(), a.positives.end(), b.positives.begin(), b.positives.end(),
                            std::back_inserter(pa));
        std::set_difference(b.negatives.begin(), b.negatives.end(), a.negatives.begin(), a.negatives.end(),
                            std::back_inserter(nb));
        if (pa.size() == 1 && nb.size() == 1 && pa[0] == nb[0] &&
            includes_sorted(a.positives, b.positives) && includes_sorted(b.negatives, a.negatives)) {
          DnfClause c{b.positives, a.negatives};
          dnf[i] = c;
          dnf[j] = c;
          changed = true;
        }
      }
    }
  }
}

// Sorted, deduplicated, resolved, and free of clauses implied by a shorter one.
Dnf minimize(Dnf dnf)
{
  if (dnf.size() > 1) {
    resolve(dnf);
  }
  std::sort(dnf.begin(), dnf.end(), [](const DnfClause & a, const DnfClause & b) {
    const auto la = a.positives.size() + a.negatives.size();
    const auto lb = b.positives.size() + b.negatives.size();
    return la != lb ? la < lb : a < b;
  });
  dnf.erase(std::unique(dnf.begin(), dnf.end()), dnf.end());
  Dnf out;
  for (const auto & c : dnf) {
    const bool subsumed = std::any_of(out.begin(), out.end(), [&](const DnfClause & k) {
      return includes_sorted(c.positives, k.positives) && includes_sorted(c.negatives, k.negatives);
    });
    if (!subsumed) {
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Nba

Nba::Nba(int n_states)
{
  for (int i = 0; i < n_states; ++i) {
    add_state();
  }
}

int Nba::add_state()
{
  accepting_flag_.push_back(false);
  out_.emplace_back();
  return n_states_++;
}

void Nba::check_state(int q) const
{
  if (q < 0 || q >= n_states_) {
    throw std::out_of_range("Buchi state " + std::to_string(q) + " out of range");
  }
}

void Nba::add_initial(int q)
{
  check_state(q);
  auto it = std::lower_bound(initial_.begin(), initial_.end(), q);
  if (it == initial_.end() || *it != q) {
    initial_.insert(it, q);
  }
}

void Nba::add_accepting(int q)
{
  check_state(q);
  if (!accepting_flag_[static_cast<std::size_t>(q)]) {
    accepting_flag_[static_cast<std::size_t>(q)] = true;
    accepting_.insert(std::lower_bound(accepting_.begin(), accepting_.end(), q), q);
  }
}

bool Nba::is_initial(int q) const
{
  return std::binary_search(initial_.begin(), initial_.end(), q);
}

void Nba::add_transition(int src, const PropFormula & guard, int dst)
{
  add_transition(src, to_dnf(guard), dst);
}

void Nba::add_transition(int src, const Dnf & guard, int dst)
{
  check_state(src);
  check_state(dst);
  auto & out = out_[static_cast<std::size_t>(src)];
  for (int t : out) {
    auto & tr = transitions_[static_cast<std::size_t>(t)];
    if (tr.dst == dst) {
      Dnf merged = tr.dnf;
      merged.insert(merged.end(), guard.begin(), guard.end());
      tr.dnf = minimize(std::move(merged));
      tr.guard = from_dnf(tr.dnf);
      return;
    }
  }
  Dnf dnf = minimize(guard);
  if (dnf.empty()) {
    return;
  }
  const int id = static_cast<int>(transitions_.size());
  NbaTransition tr;
  tr.src = src;
  tr.dst = dst;
  tr.guard = from_dnf(dnf);
  tr.dnf = std::move(dnf);
  transitions_.push_back(std::move(tr));
  auto pos = std::lower_bound(out.begin(), out.end(), dst, [this](int t, int d) {
    return transitions_[static_cast<std::size_t>(t)].dst < d;
  });
  out.insert(pos, id);
}

const NbaTransition * Nba::find_transition(int src, int dst) const
{
  for (int t : out_edges(src)) {
    if (transitions_[static_cast<std::size_t>(t)].dst == dst) {
      return &transitions_[static_cast<std::size_t>(t)];
    }
  }
  return nullptr;
}

std::vector<int> Nba::step(int q, const LabelSet & labels) const
{
  std::vector<int> out;
  for (int t : out_edges(q)) {
    const auto & tr = transitions_[static_cast<std::size_t>(t)];
    if (eval_dnf(tr.dnf, labels)) {
      out.push_back(tr.dst);
    }
  }
  return out;
}

std::vector<int> buchi_step(const Nba & nba, int q, const LabelSet & labels)
{
  return nba.step(q, labels);
}

// ---------------------------------------------------------------------------
// Lasso acceptance

bool accepts_lasso(const Nba & nba, const std::vector<LabelSet> & prefix,
                   const std::vector<LabelSet> & cycle)
{
  if (cycle.empty()) {
    throw std::invalid_argument("accepts_lasso: cycle must be nonempty");
  }
  const int n = nba.num_states();
  std::vector<bool> cur(static_cast<std::size_t>(n), false);
  for (int q : nba.initial()) {
    cur[static_cast<std::size_t>(q)] = true;
  }
  for (const auto & letter : prefix) {
    std::vector<bool> next(static_cast<std::size_t>(n), false);
    for (int q = 0; q < n; ++q) {
      if (cur[static_cast<std::size_t>(q)]) {
        for (int s : nba.step(q, letter)) {
          next[static_cast<std::size_t>(s)] = true;
        }
      }
    }
    cur = std::move(next);
  }

  // Product graph: node = pos * n + q, about to read cycle[pos] in state q.
  const int c = static_cast<int>(cycle.size());
  const int total = c * n;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(total));
  std::vector<bool> reach(static_cast<std::size_t>(total), false);
  std::deque<int> queue;
  for (int q = 0; q < n; ++q) {
    if (cur[static_cast<std::size_t>(q)]) {
      reach[static_cast<std::size_t>(q)] = true;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const int pos = v / n;
    const int q = v % n;
    const int npos = (pos + 1) % c;
    for (int s : nba.step(q, cycle[static_cast<std::size_t>(pos)])) {
      const int w = npos * n + s;
      adj[static_cast<std::size_t>(v)].push_back(w);
      if (!reach[static_cast<std::size_t>(w)]) {
        reach[static_cast<std::size_t>(w)] = true;
        queue.push_back(w);
      }
    }
  }

  // Iterative Tarjan over the reachable part.
  std::vector<int> index(static_cast<std::size_t>(total), -1);
  std::vector<int> low(static_cast<std::size_t>(total), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(total), false);
  std::vector<int> stack;
  int counter = 0;
  for (int root = 0; root < total; ++root) {
    if (!reach[static_cast<std::size_t>(root)] || index[static_cast<std::size_t>(root)] >= 0) {
      continue;
    }
    std::vector<std::pair<int, std::size_t>> call{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!call.empty()) {
      auto & [v, i] = call.back();
      const auto & succ = adj[static_cast<std::size_t>(v)];
      if (i < succ.size()) {
        const int w = succ[i++];
        if (index[static_cast<std::size_t>(w)] < 0) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(v)] =
            std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const int vv = v;
      if (low[static_cast<std::size_t>(vv)] == index[static_cast<std::size_t>(vv)]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp.push_back(w);
        } while (w != vv);
        bool nontrivial = comp.size() > 1;
        if (!nontrivial) {
          const auto & s = adj[static_cast<std::size_t>(vv)];
          nontrivial = std::find(s.begin(), s.end(), vv) != s.end();
        }
        if (nontrivial) {
          for (int x : comp) {
            if (nba.is_accepting(x % n)) {
              return true;
            }
          }
        }
      }
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[static_cast<std::size_t>(parent)] =
          std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(vv)]);
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Distances

DistanceTable::DistanceTable(const Nba & nba)
  : n_(nba.num_states()),
    rho_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), kInf),
    cycle_(static_cast<std::size_t>(n_), kInf)
{
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n_));
  for (const auto & t : nba.transitions()) {
    succ[static_cast<std::size_t>(t.src)].push_back(t.dst);
  }
  std::deque<int> queue;
  for (int s = 0; s < n_; ++s) {
    rho_[idx(s, s)] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : succ[static_cast<std::size_t>(v)]) {
        if (rho_[idx(s, w)] == kInf) {
          rho_[idx(s, w)] = rho_[idx(s, v)] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  for (int q = 0; q < n_; ++q) {
    for (int s : succ[static_cast<std::size_t>(q)]) {
      const int back = rho_[idx(s, q)];
      if (back != kInf) {
        cycle_[static_cast<std::size_t>(q)] = std::min(cycle_[static_cast<std::size_t>(q)], back + 1);
      }
    }
  }
}

std::vector<int> feasible_accepting(const Nba & nba, const DistanceTable & dist, int q0)
{
  std::vector<int> out;
  for (int f : nba.accepting()) {
    if (dist.rho(q0, f) != DistanceTable::kInf && dist.cycle(f) != DistanceTable::kInf) {
      out.push_back(f);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pruning

namespace
{

Nba copy_states(const Nba & nba)
{
  Nba out(nba.num_states());
  for (int q : nba.initial()) {
    out.add_initial(q);
  }
  for (int q : nba.accepting()) {
    out.add_accepting(q);
  }
  return out;
}

bool clause_feasible(const DnfClause & c, const RegionDisjointness & disjoint)
{
  const auto & pos = c.positives;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      if (pos[i].robot != pos[j].robot) {
        continue;
      }
      const auto a = static_cast<std::size_t>(pos[i].region - 1);
      const auto b = static_cast<std::size_t>(pos[j].region - 1);
      if (a < disjoint.size() && b < disjoint[a].size() && disjoint[a][b]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

Nba prune(const Nba & nba, const RegionDisjointness & disjoint)
{
  Nba out = copy_states(nba);
  for (const auto & t : nba.transitions()) {
    Dnf kept;
    for (const auto & c : t.dnf) {
      if (clause_feasible(c, disjoint)) {
        kept.push_back(c);
      }
    }
    if (!kept.empty()) {
      out.add_transition(t.src, kept, t.dst);
    }
  }
  return out;
}

Nba prune_multi_subformula(const Nba & nba, const std::vector<PropFormula> & subformulas)
{
  std::vector<std::vector<AtomicProp>> xi;
  for (const auto & f : subformulas) {
    const Dnf d = to_dnf(f);
    if (d.size() != 1 || !d.front().negatives.empty()) {
      throw std::invalid_argument("subformula is not a conjunction of atoms: " + f.to_string());
    }
    xi.push_back(d.front().positives);
  }
  // Repeated subformulas are one requirement, not two.
  std::sort(xi.begin(), xi.end());
  xi.erase(std::unique(xi.begin(), xi.end()), xi.end());
  Nba out = copy_states(nba);
  for (const auto & t : nba.transitions()) {
    const bool all_multi = std::all_of(t.dnf.begin(), t.dnf.end(), [&](const DnfClause & c) {
      int held = 0;
      for (const auto & x : xi) {
        if (!x.empty() && includes_sorted(c.positives, x)) {
          ++held;
        }
      }
      return held >= 2;
    });
    if (!all_multi) {
      out.add_transition(t.src, t.dnf, t.dst);
    }
  }
  return out;
}

Nba trim(const Nba & nba)
{
  const int n = nba.num_states();
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> pred(static_cast<std::size_t>(n));
  for (const auto & t : nba.transitions()) {
    succ[static_cast<std::size_t>(t.src)].push_back(t.dst);
    pred[static_cast<std::size_t>(t.dst)].push_back(t.src);
  }
  auto flood = [n](const std::vector<int> & seeds, const std::vector<std::vector<int>> & g) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<int> queue;
    for (int s : seeds) {
      if (!seen[static_cast<std::size_t>(s)]) {
        seen[static_cast<std::size_t>(s)] = true;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : g[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          queue.push_back(w);
        }
      }
    }
    return seen;
  };
  const auto reach = flood(nba.initial(), succ);
  const DistanceTable dist(nba);
  std::vector<int> good;
  for (int f : nba.accepting()) {
    if (reach[static_cast<std::size_t>(f)] && dist.cycle(f) != DistanceTable::kInf) {
      good.push_back(f);
    }
  }
  const auto coreach = flood(good, pred);
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int q = 0; q < n; ++q) {
    if (reach[static_cast<std::size_t>(q)] && coreach[static_cast<std::size_t>(q)]) {
      remap[static_cast<std::size_t>(q)] = next++;
    }
  }
  Nba out(next);
  for (int q : nba.initial()) {
    if (remap[static_cast<std::size_t>(q)] >= 0) {
      out.add_initial(remap[static_cast<std::size_t>(q)]);
    }
  }
  for (int q : nba.accepting()) {
    if (remap[static_cast<std::size_t>(q)] >= 0) {
      out.add_accepting(remap[static_cast<std::size_t>(q)]);
    }
  }
  for (const auto & t : nba.transitions()) {
    const int a = remap[static_cast<std::size_t>(t.src)];
    const int b = remap[static_cast<std::size_t>(t.dst)];
    if (a >= 0 && b >= 0) {
      out.add_transition(a, t.dnf, b);
    }
  }
  return out;
}

}  // namespace tlrrt
