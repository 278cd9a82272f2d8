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

#include "doctest.h"
#include "oracles.hpp"
#include "tlrrt/buchi.hpp"
#include "tlrrt/formula.hpp"

using namespace tlrrt;

namespace
{

const AtomicProp kA{1, 1};
const AtomicProp kB{1, 2};
const AtomicProp kC{2, 1};
const AtomicProp kD{2, 3};
const AtomicProp kE{3, 2};

}  // namespace

TEST_CASE("eval_prop basics")
{
  const auto f = PropFormula::conj({PropFormula::atom(1, 1), PropFormula::negate(PropFormula::atom(2, 2))});
  CHECK(eval_prop(f, LabelSet{kA}));
  CHECK_FALSE(eval_prop(PropFormula::atom(1, 1), LabelSet{}));
  CHECK(eval_prop(PropFormula::make_true(), LabelSet{}));
  CHECK_FALSE(eval_prop(PropFormula::make_false(), LabelSet{kA}));
}

TEST_CASE("eval_prop agrees with truth tables on random formulas")
{
  Rng rng(11);
  const std::vector<AtomicProp> atoms{kA, kB, kC, kD};
  for (int n = 0; n < 300; ++n) {
    const auto f = oracle::random_prop(rng, atoms, 4);
    for (unsigned m = 0; m < 16; ++m) {
      const auto l = oracle::assignment(atoms, m);
      REQUIRE(eval_prop(f, l) == oracle::eval(f, l));
    }
  }
}

TEST_CASE("to_dnf distributes and drops contradictions")
{
  const auto a = PropFormula::atom(kA);
  const auto b = PropFormula::atom(kB);
  const auto c = PropFormula::atom(kC);
  Dnf d = to_dnf(PropFormula::conj({PropFormula::disj({a, b}), c}));
  std::sort(d.begin(), d.end());
  Dnf want{{{kA, kC}, {}}, {{kB, kC}, {}}};
  std::sort(want.begin(), want.end());
  CHECK(d == want);

  CHECK(to_dnf(PropFormula::make_false()).empty());
  const Dnf t = to_dnf(PropFormula::make_true());
  REQUIRE(t.size() == 1);
  CHECK(t[0].positives.empty());
  CHECK(t[0].negatives.empty());
  CHECK(to_dnf(PropFormula::conj({a, PropFormula::negate(a)})).empty());
}

TEST_CASE("to_dnf is equivalent on all assignments of up to five atoms")
{
  Rng rng(12);
  const std::vector<AtomicProp> atoms{kA, kB, kC, kD, kE};
  for (int n = 0; n < 300; ++n) {
    const auto f = oracle::random_prop(rng, atoms, 5);
    const Dnf d = to_dnf(f);
    const auto back = from_dnf(d);
    for (unsigned m = 0; m < 32; ++m) {
      const auto l = oracle::assignment(atoms, m);
      const bool want = oracle::eval(f, l);
      REQUIRE(eval_dnf(d, l) == want);
      REQUIRE(oracle::eval(back, l) == want);
    }
    for (const auto & cl : d) {
      for (const auto & p : cl.positives) {
        REQUIRE_FALSE(std::binary_search(cl.negatives.begin(), cl.negatives.end(), p));
      }
    }
  }
}

TEST_CASE("to_dnf overflow guard")
{
  std::vector<PropFormula> parts;
  for (int i = 1; i <= 13; ++i) {
    parts.push_back(PropFormula::disj({PropFormula::atom(i, 1), PropFormula::atom(i, 2)}));
  }
  CHECK_THROWS_AS(to_dnf(PropFormula::conj(parts)), DnfOverflowError);
  CHECK_NOTHROW(to_dnf(PropFormula::conj(parts), 1u << 14));
}

TEST_CASE("parse_ltl structure")
{
  const auto f = parse_ltl("[]<> pi(1,1) && []<> pi(2,2)");
  REQUIRE(f.kind() == LtlFormula::Kind::kAnd);
  REQUIRE(f.children().size() == 2);
  for (const auto & c : f.children()) {
    REQUIRE(c.kind() == LtlFormula::Kind::kAlways);
    CHECK(c.children()[0].kind() == LtlFormula::Kind::kEventually);
  }
  CHECK(f == parse_ltl("G F pi(1,1) && G F pi(2,2)"));

  const auto u = parse_ltl("!pi(1,1) U pi(1,2)");
  REQUIRE(u.kind() == LtlFormula::Kind::kUntil);
  CHECK(u.children()[0] == LtlFormula::negate(LtlFormula::atom(1, 1)));
  CHECK(u.children()[1] == LtlFormula::atom(1, 2));
}

TEST_CASE("parse errors")
{
  CHECK_THROWS_AS(parse_ltl("X pi(1,1)"), UnsupportedOperatorError);
  CHECK_THROWS_AS(parse_ltl("pi(1,1) &&"), ParseError);
  CHECK_THROWS_AS(parse_ltl("pi(1,"), ParseError);
  CHECK_THROWS_AS(parse_prop("pi(1,1) U pi(1,2)"), ParseError);
  CHECK_THROWS_AS(parse_ltl("pi(3,1)", AtomBounds{2, 6}), ParseError);
  CHECK_THROWS_AS(parse_ltl("pi(1,7)", AtomBounds{2, 6}), ParseError);
  CHECK_NOTHROW(parse_ltl("pi(2,6)", AtomBounds{2, 6}));
}

TEST_CASE("print and parse round trip")
{
  Rng rng(13);
  const std::vector<AtomicProp> atoms{kA, kB, kC};
  for (int n = 0; n < 200; ++n) {
    const auto p = oracle::random_prop(rng, atoms, 4);
    REQUIRE(parse_prop(p.to_string()) == p);
    const auto f = oracle::random_ltl(rng, atoms, 4);
    REQUIRE(parse_ltl(f.to_string()) == f);
  }
}

TEST_CASE("nnf dualities")
{
  const auto a = LtlFormula::atom(kA);
  const auto b = LtlFormula::atom(kB);
  CHECK(nnf(LtlFormula::negate(LtlFormula::always(a))) == LtlFormula::eventually(LtlFormula::negate(a)));
  CHECK(nnf(LtlFormula::negate(LtlFormula::until(a, b))) ==
        LtlFormula::release(LtlFormula::negate(a), LtlFormula::negate(b)));
}

TEST_CASE("nnf preserves lasso semantics")
{
  Rng rng(14);
  const std::vector<AtomicProp> atoms{kA, kB};
  std::vector<LtlFormula> fs;
  for (int n = 0; n < 30; ++n) {
    fs.push_back(oracle::random_ltl(rng, atoms, 4));
  }
  for (const auto & f : fs) {
    const auto g = nnf(f);
    // Negations sit on atoms only.
    std::function<void(const LtlFormula &)> walk = [&](const LtlFormula & h) {
      if (h.kind() == LtlFormula::Kind::kNot) {
        REQUIRE(h.children()[0].kind() == LtlFormula::Kind::kAtom);
        return;
      }
      for (const auto & c : h.children()) {
        walk(c);
      }
    };
    walk(g);
    oracle::for_each_lasso(atoms, 5, [&](const auto & pre, const auto & cyc) {
      oracle::LassoEvaluator ev(pre, cyc);
      REQUIRE(ev.holds(f) == ev.holds(g));
    });
  }
}

TEST_CASE("nnf equivalence checked through the automaton")
{
  Rng rng(15);
  const std::vector<AtomicProp> atoms{kA, kB};
  for (int n = 0; n < 8; ++n) {
    const auto f = oracle::random_ltl(rng, atoms, 3);
    const Nba nba = ltl_to_nba(nnf(f));
    oracle::for_each_lasso(atoms, 6, [&](const auto & pre, const auto & cyc) {
      REQUIRE(accepts_lasso(nba, pre, cyc) == oracle::LassoEvaluator(pre, cyc).holds(f));
    });
  }
}
