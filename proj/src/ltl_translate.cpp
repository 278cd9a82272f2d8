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

// LTL -> NBA in three passes:
//   1. tableau: states are sets of NNF obligations; each state is expanded
//      into covers (literal clause, next obligations, postponed untils),
//      giving a transition-based generalized Buchi automaton with one
//      acceptance set per until subformula;
//   2. counter degeneralization into a state-based NBA;
//   3. trim and quotient by a guard-respecting bisimulation.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "tlrrt/buchi.hpp"

namespace tlrrt
{

namespace
{

enum class Op { kTrue, kFalse, kLit, kAnd, kOr, kUntil, kRelease };

struct Node
{
  Op op = Op::kTrue;
  AtomicProp atom;
  bool positive = true;
  std::vector<int> kids;  // And/Or: sorted operands; Until/Release: {lhs, rhs}
  bool temporal = false;
};

class FormulaTable
{
public:
  FormulaTable()
  {
    true_id_ = intern(Node{Op::kTrue, {}, true, {}, false});
    false_id_ = intern(Node{Op::kFalse, {}, true, {}, false});
  }

  const Node & at(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  int true_id() const { return true_id_; }
  int false_id() const { return false_id_; }

  int lit(AtomicProp a, bool positive) { return intern(Node{Op::kLit, a, positive, {}, false}); }

  int junction(Op op, std::vector<int> kids)
  {
    const int absorbing = op == Op::kAnd ? false_id_ : true_id_;
    const int neutral = op == Op::kAnd ? true_id_ : false_id_;
    std::vector<int> flat;
    for (int k : kids) {
      if (k == absorbing) {
        return absorbing;
      }
      if (k == neutral) {
        continue;
      }
      if (at(k).op == op) {
        flat.insert(flat.end(), at(k).kids.begin(), at(k).kids.end());
      } else {
        flat.push_back(k);
      }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) {
      return neutral;
    }
    if (flat.size() == 1) {
      return flat.front();
    }
    bool temporal = false;
    for (int k : flat) {
      temporal = temporal || at(k).temporal;
    }
    return intern(Node{op, {}, true, std::move(flat), temporal});
  }

  int binary(Op op, int lhs, int rhs)
  {
    // Constant folding: a U false = false, a U true = true, false R b = G b kept.
    if (op == Op::kUntil && (rhs == true_id_ || rhs == false_id_)) {
      return rhs;
    }
    if (op == Op::kRelease && (rhs == true_id_ || rhs == false_id_)) {
      return rhs;
    }
    return intern(Node{op, {}, true, {lhs, rhs}, true});
  }

  /// Negation of a propositional (non-temporal) node, in NNF.
  int negate_prop(int id)
  {
    const Node n = at(id);
    switch (n.op) {
      case Op::kTrue: return false_id_;
      case Op::kFalse: return true_id_;
      case Op::kLit: return lit(n.atom, !n.positive);
      case Op::kAnd:
      case Op::kOr: {
        std::vector<int> kids;
        for (int k : n.kids) {
          kids.push_back(negate_prop(k));
        }
        return junction(n.op == Op::kAnd ? Op::kOr : Op::kAnd, std::move(kids));
      }
      default:
        throw std::logic_error("negate_prop on temporal node");
    }
  }

  int from_nnf(const LtlFormula & f)
  {
    using K = LtlFormula::Kind;
    const auto & c = f.children();
    switch (f.kind()) {
      case K::kTrue: return true_id_;
      case K::kFalse: return false_id_;
      case K::kAtom: return lit(f.atom_prop(), true);
      case K::kNot: return lit(c.front().atom_prop(), false);
      case K::kAnd:
      case K::kOr: {
        std::vector<int> kids;
        for (const auto & x : c) {
          kids.push_back(from_nnf(x));
        }
        return junction(f.kind() == K::kAnd ? Op::kAnd : Op::kOr, std::move(kids));
      }
      case K::kUntil: return binary(Op::kUntil, from_nnf(c[0]), from_nnf(c[1]));
      case K::kRelease: return binary(Op::kRelease, from_nnf(c[0]), from_nnf(c[1]));
      case K::kEventually: return binary(Op::kUntil, true_id_, from_nnf(c[0]));
      case K::kAlways: return binary(Op::kRelease, false_id_, from_nnf(c[0]));
    }
    return true_id_;
  }

  /// Sound, incomplete syntactic implication a => b.
  bool implies(int a, int b)
  {
    if (a == b || b == true_id_ || a == false_id_) {
      return true;
    }
    const auto key = std::make_pair(a, b);
    if (auto it = implies_memo_.find(key); it != implies_memo_.end()) {
      return it->second;
    }
    const Node na = at(a);
    const Node nb = at(b);
    bool r = false;
    if (nb.op == Op::kOr) {
      r = std::any_of(nb.kids.begin(), nb.kids.end(), [&](int k) { return implies(a, k); });
    }
    if (!r && na.op == Op::kAnd) {
      r = std::any_of(na.kids.begin(), na.kids.end(), [&](int k) { return implies(k, b); });
    }
    if (!r && na.op == Op::kOr) {
      r = std::all_of(na.kids.begin(), na.kids.end(), [&](int k) { return implies(k, b); });
    }
    if (!r && nb.op == Op::kAnd) {
      r = std::all_of(nb.kids.begin(), nb.kids.end(), [&](int k) { return implies(a, k); });
    }
    if (!r && na.op == Op::kRelease) {
      r = implies(na.kids[1], b);
    }
    if (!r && nb.op == Op::kUntil) {
      r = implies(a, nb.kids[1]);
    }
    if (!r && na.op == nb.op && (na.op == Op::kUntil || na.op == Op::kRelease)) {
      r = implies(na.kids[0], nb.kids[0]) && implies(na.kids[1], nb.kids[1]);
    }
    implies_memo_[key] = r;
    return r;
  }

private:
  int intern(Node n)
  {
    auto key = std::make_tuple(static_cast<int>(n.op), n.atom, n.positive, n.kids);
    if (auto it = index_.find(key); it != index_.end()) {
      return it->second;
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(key), id);
    return id;
  }

  std::vector<Node> nodes_;
  std::map<std::tuple<int, AtomicProp, bool, std::vector<int>>, int> index_;
  std::map<std::pair<int, int>, bool> implies_memo_;
  int true_id_ = 0;
  int false_id_ = 0;
};

using Obligations = std::vector<int>;  // sorted formula ids

struct Cover
{
  DnfClause clause;
  Obligations next;
  std::vector<int> postponed;  // sorted until ids
};

class Tableau
{
public:
  explicit Tableau(FormulaTable & table) : t_(table) {}

  /// Drops obligations implied by another member of the set.
  Obligations reduce(const Obligations & s)
  {
    Obligations out;
    for (int psi : s) {
      bool redundant = false;
      for (int phi : s) {
        if (phi != psi && t_.implies(phi, psi) && (!t_.implies(psi, phi) || phi < psi)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) {
        out.push_back(psi);
      }
    }
    return out;
  }

  std::vector<Cover> expand(const Obligations & state)
  {
    std::vector<Cover> raw;
    Partial p;
    p.todo.assign(state.rbegin(), state.rend());
    expand_rec(std::move(p), raw);
    for (auto & c : raw) {
      c.next = reduce(c.next);
    }
    return remove_dominated(std::move(raw));
  }

private:
  struct Partial
  {
    std::vector<int> todo;
    std::set<int> done;
    std::set<AtomicProp> pos;
    std::set<AtomicProp> neg;
    std::set<int> next;
    std::set<int> postponed;
  };

  void expand_rec(Partial p, std::vector<Cover> & out)
  {
    while (!p.todo.empty()) {
      const int f = p.todo.back();
      p.todo.pop_back();
      if (!p.done.insert(f).second) {
        continue;
      }
      const Node & n = t_.at(f);
      switch (n.op) {
        case Op::kTrue:
          break;
        case Op::kFalse:
          return;
        case Op::kLit:
          if (n.positive) {
            if (p.neg.count(n.atom)) {
              return;
            }
            p.pos.insert(n.atom);
          } else {
            if (p.pos.count(n.atom)) {
              return;
            }
            p.neg.insert(n.atom);
          }
          break;
        case Op::kAnd:
          p.todo.insert(p.todo.end(), n.kids.rbegin(), n.kids.rend());
          break;
        case Op::kOr: {
          const std::vector<int> kids = n.kids;
          for (int k : kids) {
            Partial q = p;
            q.todo.push_back(k);
            expand_rec(std::move(q), out);
          }
          return;
        }
        case Op::kUntil: {
          // a U b  ==  b  ||  (a && !b && X(a U b)); !b only for propositional b.
          const int a = n.kids[0];
          const int b = n.kids[1];
          Partial now = p;
          now.todo.push_back(b);
          expand_rec(std::move(now), out);
          p.todo.push_back(a);
          if (!t_.at(b).temporal) {
            p.todo.push_back(t_.negate_prop(b));
          }
          p.next.insert(f);
          p.postponed.insert(f);
          break;
        }
        case Op::kRelease: {
          // a R b  ==  (a && b)  ||  (b && !a && X(a R b)); !a only for propositional a.
          const int a = n.kids[0];
          const int b = n.kids[1];
          if (a != t_.false_id()) {
            Partial now = p;
            now.todo.push_back(b);
            now.todo.push_back(a);
            expand_rec(std::move(now), out);
          }
          p.todo.push_back(b);
          if (!t_.at(a).temporal && a != t_.false_id()) {
            p.todo.push_back(t_.negate_prop(a));
          }
          p.next.insert(f);
          break;
        }
      }
    }
    Cover c;
    c.clause.positives.assign(p.pos.begin(), p.pos.end());
    c.clause.negatives.assign(p.neg.begin(), p.neg.end());
    c.next.assign(p.next.begin(), p.next.end());
    c.postponed.assign(p.postponed.begin(), p.postponed.end());
    out.push_back(std::move(c));
  }

  static bool weaker_clause(const DnfClause & a, const DnfClause & b)
  {
    return std::includes(b.positives.begin(), b.positives.end(), a.positives.begin(), a.positives.end()) &&
           std::includes(b.negatives.begin(), b.negatives.end(), a.negatives.begin(), a.negatives.end());
  }

  // Cover x dominates y if it goes to the same state under a weaker guard
  // while postponing no more untils.
  static std::vector<Cover> remove_dominated(std::vector<Cover> covers)
  {
    std::sort(covers.begin(), covers.end(), [](const Cover & a, const Cover & b) {
      return std::tie(a.next, a.clause, a.postponed) < std::tie(b.next, b.clause, b.postponed);
    });
    covers.erase(std::unique(covers.begin(), covers.end(),
                             [](const Cover & a, const Cover & b) {
                               return a.next == b.next && a.clause == b.clause && a.postponed == b.postponed;
                             }),
                 covers.end());
    std::vector<bool> dead(covers.size(), false);
    for (std::size_t i = 0; i < covers.size(); ++i) {
      if (dead[i]) {
        continue;
      }
      for (std::size_t j = 0; j < covers.size(); ++j) {
        if (i == j || dead[j] || covers[i].next != covers[j].next) {
          continue;
        }
        if (weaker_clause(covers[i].clause, covers[j].clause) &&
            std::includes(covers[j].postponed.begin(), covers[j].postponed.end(),
                          covers[i].postponed.begin(), covers[i].postponed.end())) {
          dead[j] = true;
        }
      }
    }
    std::vector<Cover> out;
    for (std::size_t i = 0; i < covers.size(); ++i) {
      if (!dead[i]) {
        out.push_back(std::move(covers[i]));
      }
    }
    return out;
  }

  FormulaTable & t_;
};

struct TgbaEdge
{
  int src;
  DnfClause clause;
  int dst;
  std::vector<int> postponed;
};

// Coarsest partition where states in a block agree on acceptance and, per
// destination block, on the (syntactically normalized) guard.
Nba quotient(const Nba & nba)
{
  const int n = nba.num_states();
  if (n == 0) {
    return nba;
  }
  std::vector<int> block(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    block[static_cast<std::size_t>(q)] = nba.is_accepting(q) ? 1 : 0;
  }
  int n_blocks = 0;
  while (true) {
    using Signature = std::pair<int, std::vector<std::pair<int, Dnf>>>;
    std::map<Signature, int> ids;
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
      std::map<int, Dnf> per_block;
      for (int t : nba.out_edges(q)) {
        const auto & tr = nba.transitions()[static_cast<std::size_t>(t)];
        auto & d = per_block[block[static_cast<std::size_t>(tr.dst)]];
        d.insert(d.end(), tr.dnf.begin(), tr.dnf.end());
      }
      Signature sig;
      sig.first = block[static_cast<std::size_t>(q)];
      for (auto & [b, d] : per_block) {
        Nba scratch(1);
        scratch.add_transition(0, d, 0);
        sig.second.emplace_back(b, scratch.transitions().front().dnf);
      }
      auto [it, inserted] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
      next[static_cast<std::size_t>(q)] = it->second;
    }
    const int count = static_cast<int>(ids.size());
    block = std::move(next);
    if (count == n_blocks) {
      break;
    }
    n_blocks = count;
  }
  // Renumber blocks by smallest member.
  std::vector<int> first(static_cast<std::size_t>(n_blocks), -1);
  std::vector<int> order;
  for (int q = 0; q < n; ++q) {
    auto & f = first[static_cast<std::size_t>(block[static_cast<std::size_t>(q)])];
    if (f < 0) {
      f = static_cast<int>(order.size());
      order.push_back(q);
    }
  }
  Nba out(n_blocks);
  auto map = [&](int q) { return first[static_cast<std::size_t>(block[static_cast<std::size_t>(q)])]; };
  for (int q : nba.initial()) {
    out.add_initial(map(q));
  }
  for (int q : nba.accepting()) {
    out.add_accepting(map(q));
  }
  for (int rep : order) {
    for (int t : nba.out_edges(rep)) {
      const auto & tr = nba.transitions()[static_cast<std::size_t>(t)];
      out.add_transition(map(rep), tr.dnf, map(tr.dst));
    }
  }
  return out;
}

}  // namespace

Nba ltl_to_nba(const LtlFormula & f, std::size_t max_states)
{
  FormulaTable table;
  Tableau tableau(table);
  const int root = table.from_nnf(nnf(f));

  // Pass 1: generalized automaton over obligation sets.
  std::map<Obligations, int> state_ids;
  std::vector<Obligations> states;
  std::vector<TgbaEdge> edges;
  std::deque<int> work;
  auto intern_state = [&](const Obligations & s) {
    if (auto it = state_ids.find(s); it != state_ids.end()) {
      return it->second;
    }
    if (states.size() >= max_states) {
      throw TranslationOverflowError("tableau exceeds " + std::to_string(max_states) + " states");
    }
    const int id = static_cast<int>(states.size());
    state_ids.emplace(s, id);
    states.push_back(s);
    work.push_back(id);
    return id;
  };
  const int init = intern_state(tableau.reduce({root}));
  std::set<int> used_untils;
  while (!work.empty()) {
    const int s = work.front();
    work.pop_front();
    const Obligations obligations = states[static_cast<std::size_t>(s)];
    for (auto & c : tableau.expand(obligations)) {
      const int d = intern_state(c.next);
      used_untils.insert(c.postponed.begin(), c.postponed.end());
      edges.push_back(TgbaEdge{s, std::move(c.clause), d, std::move(c.postponed)});
    }
  }

  // Pass 2: counter degeneralization; level k is accepting.
  const std::vector<int> untils(used_untils.begin(), used_untils.end());
  const int k = static_cast<int>(untils.size());
  std::vector<std::vector<const TgbaEdge *>> out_of(states.size());
  for (const auto & e : edges) {
    out_of[static_cast<std::size_t>(e.src)].push_back(&e);
  }
  std::map<std::pair<int, int>, int> level_ids;
  std::vector<std::pair<int, int>> level_states;
  std::deque<int> queue;
  Nba nba;
  auto intern_level = [&](int s, int lvl) {
    const auto key = std::make_pair(s, lvl);
    if (auto it = level_ids.find(key); it != level_ids.end()) {
      return it->second;
    }
    if (level_states.size() >= max_states) {
      throw TranslationOverflowError("automaton exceeds " + std::to_string(max_states) + " states");
    }
    const int id = nba.add_state();
    if (lvl == k) {
      nba.add_accepting(id);
    }
    level_ids.emplace(key, id);
    level_states.push_back(key);
    queue.push_back(id);
    return id;
  };
  nba.add_initial(intern_level(init, 0));
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    const auto [s, lvl] = level_states[static_cast<std::size_t>(id)];
    for (const TgbaEdge * e : out_of[static_cast<std::size_t>(s)]) {
      int j = lvl == k ? 0 : lvl;
      while (j < k && !std::binary_search(e->postponed.begin(), e->postponed.end(),
                                          untils[static_cast<std::size_t>(j)])) {
        ++j;
      }
      const int dst = intern_level(e->dst, j);
      nba.add_transition(id, Dnf{e->clause}, dst);
    }
  }

  // Pass 3: cleanup.
  return trim(quotient(trim(nba)));
}

}  // namespace tlrrt
