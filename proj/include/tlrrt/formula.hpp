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

#ifndef TLRRT_FORMULA_HPP_
#define TLRRT_FORMULA_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tlrrt
{

/// Atomic proposition pi(robot, region): robot `robot` is inside region `region`.
/// Both indices are 1-based.
struct AtomicProp
{
  int robot = 0;
  int region = 0;

  auto operator<=>(const AtomicProp &) const = default;
};

std::string to_string(const AtomicProp & a);

/// Set of atomic propositions that hold at one instant (one letter of a word).
class LabelSet
{
public:
  LabelSet() = default;
  LabelSet(std::initializer_list<AtomicProp> atoms);
  explicit LabelSet(std::vector<AtomicProp> atoms);

  void insert(const AtomicProp & a);
  bool contains(const AtomicProp & a) const;
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<AtomicProp> & atoms() const { return atoms_; }

  bool operator==(const LabelSet &) const = default;

private:
  std::vector<AtomicProp> atoms_;  // sorted, unique
};

/// Declared index ranges used to validate atoms while parsing.
struct AtomBounds
{
  int n_robots = 0;
  int n_regions = 0;
};

class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string & what, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Raised for syntactically valid operators that the logic fragment excludes (Next).
class UnsupportedOperatorError : public ParseError
{
public:
  using ParseError::ParseError;
};

class DnfOverflowError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Immutable propositional formula over AtomicProp. Copies share structure.
class PropFormula
{
public:
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr };

  PropFormula();  // true

  static PropFormula make_true();
  static PropFormula make_false();
  static PropFormula atom(AtomicProp a);
  static PropFormula atom(int robot, int region) { return atom(AtomicProp{robot, region}); }
  static PropFormula negate(PropFormula f);
  static PropFormula conj(std::vector<PropFormula> children);
  static PropFormula disj(std::vector<PropFormula> children);

  Kind kind() const;
  const AtomicProp & atom_prop() const;
  const std::vector<PropFormula> & children() const;

  bool operator==(const PropFormula & other) const;

  /// Text in the parser's grammar; parse_prop(f.to_string()) == f.
  std::string to_string() const;

private:
  struct Node;
  explicit PropFormula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

PropFormula operator&&(const PropFormula & a, const PropFormula & b);
PropFormula operator||(const PropFormula & a, const PropFormula & b);
PropFormula operator!(const PropFormula & a);

bool eval_prop(const PropFormula & f, const LabelSet & labels);

/// Conjunction of literals. Both vectors are sorted and disjoint.
struct DnfClause
{
  std::vector<AtomicProp> positives;
  std::vector<AtomicProp> negatives;

  bool satisfied_by(const LabelSet & labels) const;
  bool operator==(const DnfClause &) const = default;
  auto operator<=>(const DnfClause &) const = default;
};

using Dnf = std::vector<DnfClause>;

inline constexpr std::size_t kDefaultDnfBound = 4096;

/// Equivalent disjunction of satisfiable clauses. False -> {}, True -> {{}}.
/// Throws DnfOverflowError when an intermediate clause count exceeds `max_clauses`.
Dnf to_dnf(const PropFormula & f, std::size_t max_clauses = kDefaultDnfBound);

PropFormula from_dnf(const Dnf & dnf);
PropFormula clause_formula(const DnfClause & clause);
bool eval_dnf(const Dnf & dnf, const LabelSet & labels);

/// Every atom mentioned by the formula, sorted and unique.
std::vector<AtomicProp> atoms_of(const PropFormula & f);

PropFormula parse_prop(std::string_view text, std::optional<AtomBounds> bounds = std::nullopt);

/// Next-free LTL formula. F and G are kept as first-class nodes.
class LtlFormula
{
public:
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kUntil, kRelease, kEventually, kAlways };

  LtlFormula();  // true

  static LtlFormula make_true();
  static LtlFormula make_false();
  static LtlFormula atom(AtomicProp a);
  static LtlFormula atom(int robot, int region) { return atom(AtomicProp{robot, region}); }
  static LtlFormula negate(LtlFormula f);
  static LtlFormula conj(std::vector<LtlFormula> children);
  static LtlFormula disj(std::vector<LtlFormula> children);
  static LtlFormula until(LtlFormula lhs, LtlFormula rhs);
  static LtlFormula release(LtlFormula lhs, LtlFormula rhs);
  static LtlFormula eventually(LtlFormula f);
  static LtlFormula always(LtlFormula f);

  Kind kind() const;
  const AtomicProp & atom_prop() const;
  const std::vector<LtlFormula> & children() const;
  /// Address of the shared node; stable identity for hashing/caching.
  const void * id() const { return node_.get(); }

  bool operator==(const LtlFormula & other) const;
  /// Total structural order, used to canonicalize formula sets.
  static int compare(const LtlFormula & a, const LtlFormula & b);

  std::string to_string() const;

private:
  struct Node;
  explicit LtlFormula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

LtlFormula parse_ltl(std::string_view text, std::optional<AtomBounds> bounds = std::nullopt);

/// Negation normal form: negations only on atoms. F and G are preserved,
/// with !F a -> G !a and !G a -> F !a.
LtlFormula nnf(const LtlFormula & f);

std::vector<AtomicProp> atoms_of(const LtlFormula & f);

}  // namespace tlrrt

#endif  // TLRRT_FORMULA_HPP_
