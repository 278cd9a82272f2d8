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

#include "tlrrt/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

namespace tlrrt
{

std::string to_string(const AtomicProp & a)
{
  return "pi(" + std::to_string(a.robot) + "," + std::to_string(a.region) + ")";
}

// ---------------------------------------------------------------------------
// LabelSet

LabelSet::LabelSet(std::initializer_list<AtomicProp> atoms)
  : LabelSet(std::vector<AtomicProp>(atoms))
{
}

LabelSet::LabelSet(std::vector<AtomicProp> atoms)
  : atoms_(std::move(atoms))
{
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

void LabelSet::insert(const AtomicProp & a)
{
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) {
    atoms_.insert(it, a);
  }
}

bool LabelSet::contains(const AtomicProp & a) const
{
  // Label sets hold at most one atom per robot in practice; linear scan wins.
  for (const auto & x : atoms_) {
    if (x == a) {
      return true;
    }
  }
  return false;
}

ParseError::ParseError(const std::string & what, std::size_t position)
  : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
{
}

// ---------------------------------------------------------------------------
// PropFormula

struct PropFormula::Node
{
  Kind kind;
  AtomicProp atom;
  std::vector<PropFormula> children;
};

PropFormula::PropFormula()
  : node_(make_true().node_)
{
}

PropFormula::PropFormula(std::shared_ptr<const Node> node)
  : node_(std::move(node))
{
}

PropFormula PropFormula::make_true()
{
  static const auto node = std::make_shared<const Node>(Node{Kind::kTrue, {}, {}});
  return PropFormula(node);
}

PropFormula PropFormula::make_false()
{
  static const auto node = std::make_shared<const Node>(Node{Kind::kFalse, {}, {}});
  return PropFormula(node);
}

PropFormula PropFormula::atom(AtomicProp a)
{
  return PropFormula(std::make_shared<const Node>(Node{Kind::kAtom, a, {}}));
}

PropFormula PropFormula::negate(PropFormula f)
{
  return PropFormula(std::make_shared<const Node>(Node{Kind::kNot, {}, {std::move(f)}}));
}

PropFormula PropFormula::conj(std::vector<PropFormula> children)
{
  if (children.empty()) {
    return make_true();
  }
  if (children.size() == 1) {
    return children.front();
  }
  return PropFormula(std::make_shared<const Node>(Node{Kind::kAnd, {}, std::move(children)}));
}

PropFormula PropFormula::disj(std::vector<PropFormula> children)
{
  if (children.empty()) {
    return make_false();
  }
  if (children.size() == 1) {
    return children.front();
  }
  return PropFormula(std::make_shared<const Node>(Node{Kind::kOr, {}, std::move(children)}));
}

PropFormula::Kind PropFormula::kind() const { return node_->kind; }
const AtomicProp & PropFormula::atom_prop() const { return node_->atom; }
const std::vector<PropFormula> & PropFormula::children() const { return node_->children; }

bool PropFormula::operator==(const PropFormula & other) const
{
  if (node_ == other.node_) {
    return true;
  }
  if (kind() != other.kind()) {
    return false;
  }
  if (kind() == Kind::kAtom) {
    return atom_prop() == other.atom_prop();
  }
  return children() == other.children();
}

namespace
{

bool prop_needs_parens(const PropFormula & f)
{
  return f.kind() == PropFormula::Kind::kAnd || f.kind() == PropFormula::Kind::kOr;
}

void print_prop(const PropFormula & f, std::string & out)
{
  using K = PropFormula::Kind;
  switch (f.kind()) {
    case K::kTrue: out += "true"; return;
    case K::kFalse: out += "false"; return;
    case K::kAtom: out += to_string(f.atom_prop()); return;
    case K::kNot: {
      out += "!";
      const auto & c = f.children().front();
      if (prop_needs_parens(c)) {
        out += "(";
        print_prop(c, out);
        out += ")";
      } else {
        print_prop(c, out);
      }
      return;
    }
    case K::kAnd:
    case K::kOr: {
      const char * op = f.kind() == K::kAnd ? " && " : " || ";
      bool first = true;
      for (const auto & c : f.children()) {
        if (!first) {
          out += op;
        }
        first = false;
        if (prop_needs_parens(c)) {
          out += "(";
          print_prop(c, out);
          out += ")";
        } else {
          print_prop(c, out);
        }
      }
      return;
    }
  }
}

}  // namespace

std::string PropFormula::to_string() const
{
  std::string out;
  print_prop(*this, out);
  return out;
}

PropFormula operator&&(const PropFormula & a, const PropFormula & b) { return PropFormula::conj({a, b}); }
PropFormula operator||(const PropFormula & a, const PropFormula & b) { return PropFormula::disj({a, b}); }
PropFormula operator!(const PropFormula & a) { return PropFormula::negate(a); }

bool eval_prop(const PropFormula & f, const LabelSet & labels)
{
  using K = PropFormula::Kind;
  switch (f.kind()) {
    case K::kTrue: return true;
    case K::kFalse: return false;
    case K::kAtom: return labels.contains(f.atom_prop());
    case K::kNot: return !eval_prop(f.children().front(), labels);
    case K::kAnd:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const PropFormula & c) { return eval_prop(c, labels); });
    case K::kOr:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const PropFormula & c) { return eval_prop(c, labels); });
  }
  return false;
}

// ---------------------------------------------------------------------------
// DNF

bool DnfClause::satisfied_by(const LabelSet & labels) const
{
  for (const auto & a : positives) {
    if (!labels.contains(a)) {
      return false;
    }
  }
  for (const auto & a : negatives) {
    if (labels.contains(a)) {
      return false;
    }
  }
  return true;
}

namespace
{

// Merges two clauses; nullopt if the result holds p and !p.
std::optional<DnfClause> merge_clauses(const DnfClause & a, const DnfClause & b)
{
  DnfClause out;
  std::set_union(a.positives.begin(), a.positives.end(), b.positives.begin(), b.positives.end(),
                 std::back_inserter(out.positives));
  std::set_union(a.negatives.begin(), a.negatives.end(), b.negatives.begin(), b.negatives.end(),
                 std::back_inserter(out.negatives));
  std::vector<AtomicProp> clash;
  std::set_intersection(out.positives.begin(), out.positives.end(), out.negatives.begin(),
                        out.negatives.end(), std::back_inserter(clash));
  if (!clash.empty()) {
    return std::nullopt;
  }
  return out;
}

void dedupe(Dnf & dnf)
{
  std::sort(dnf.begin(), dnf.end());
  dnf.erase(std::unique(dnf.begin(), dnf.end()), dnf.end());
}

Dnf dnf_rec(const PropFormula & f, bool negated, std::size_t bound)
{
  using K = PropFormula::Kind;
  switch (f.kind()) {
    case K::kTrue:
      return negated ? Dnf{} : Dnf{DnfClause{}};
    case K::kFalse:
      return negated ? Dnf{DnfClause{}} : Dnf{};
    case K::kAtom: {
      DnfClause c;
      (negated ? c.negatives : c.positives).push_back(f.atom_prop());
      return Dnf{c};
    }
    case K::kNot:
      return dnf_rec(f.children().front(), !negated, bound);
    case K::kAnd:
    case K::kOr: {
      const bool is_and = (f.kind() == K::kAnd) != negated;
      if (!is_and) {
        Dnf out;
        for (const auto & c : f.children()) {
          Dnf part = dnf_rec(c, negated, bound);
          out.insert(out.end(), part.begin(), part.end());
          if (out.size() > bound) {
            throw DnfOverflowError("DNF clause count exceeds bound " + std::to_string(bound));
          }
        }
        dedupe(out);
        return out;
      }
      Dnf acc{DnfClause{}};
      for (const auto & c : f.children()) {
        Dnf part = dnf_rec(c, negated, bound);
        Dnf next;
        for (const auto & x : acc) {
          for (const auto & y : part) {
            if (auto m = merge_clauses(x, y)) {
              next.push_back(std::move(*m));
              if (next.size() > bound) {
                throw DnfOverflowError("DNF clause count exceeds bound " + std::to_string(bound));
              }
            }
          }
        }
        dedupe(next);
        acc = std::move(next);
        if (acc.empty()) {
          break;
        }
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

Dnf to_dnf(const PropFormula & f, std::size_t max_clauses)
{
  return dnf_rec(f, false, max_clauses);
}

PropFormula clause_formula(const DnfClause & clause)
{
  std::vector<PropFormula> lits;
  for (const auto & a : clause.positives) {
    lits.push_back(PropFormula::atom(a));
  }
  for (const auto & a : clause.negatives) {
    lits.push_back(PropFormula::negate(PropFormula::atom(a)));
  }
  return PropFormula::conj(std::move(lits));
}

PropFormula from_dnf(const Dnf & dnf)
{
  std::vector<PropFormula> clauses;
  for (const auto & c : dnf) {
    if (c.positives.empty() && c.negatives.empty()) {
      return PropFormula::make_true();
    }
    clauses.push_back(clause_formula(c));
  }
  return PropFormula::disj(std::move(clauses));
}

bool eval_dnf(const Dnf & dnf, const LabelSet & labels)
{
  return std::any_of(dnf.begin(), dnf.end(), [&](const DnfClause & c) { return c.satisfied_by(labels); });
}

namespace
{

void collect_atoms(const PropFormula & f, std::set<AtomicProp> & out)
{
  if (f.kind() == PropFormula::Kind::kAtom) {
    out.insert(f.atom_prop());
  }
  for (const auto & c : f.children()) {
    collect_atoms(c, out);
  }
}

}  // namespace

std::vector<AtomicProp> atoms_of(const PropFormula & f)
{
  std::set<AtomicProp> s;
  collect_atoms(f, s);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Lexer shared by both grammars

namespace
{

enum class Tok {
  kEnd, kLParen, kRParen, kComma, kNot, kAnd, kOr, kUntil, kRelease, kEventually, kAlways, kNext,
  kTrue, kFalse, kPi, kInt
};

struct Token
{
  Tok kind;
  std::size_t pos;
  long value = 0;
};

std::vector<Token> lex(std::string_view s)
{
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto two = [&](const char * t) { return s.substr(i, 2) == t; };
    if (c == '(') { out.push_back({Tok::kLParen, start}); ++i; continue; }
    if (c == ')') { out.push_back({Tok::kRParen, start}); ++i; continue; }
    if (c == ',') { out.push_back({Tok::kComma, start}); ++i; continue; }
    if (c == '!') { out.push_back({Tok::kNot, start}); ++i; continue; }
    if (two("&&")) { out.push_back({Tok::kAnd, start}); i += 2; continue; }
    if (two("||")) { out.push_back({Tok::kOr, start}); i += 2; continue; }
    if (two("<>")) { out.push_back({Tok::kEventually, start}); i += 2; continue; }
    if (two("[]")) { out.push_back({Tok::kAlways, start}); i += 2; continue; }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        if (v > 1000000) {
          throw ParseError("integer too large", start);
        }
        ++i;
      }
      out.push_back({Tok::kInt, start, v});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        ++i;
      }
      const std::string word(s.substr(start, i - start));
      Tok k;
      if (word == "pi") k = Tok::kPi;
      else if (word == "true") k = Tok::kTrue;
      else if (word == "false") k = Tok::kFalse;
      else if (word == "U") k = Tok::kUntil;
      else if (word == "R") k = Tok::kRelease;
      else if (word == "F") k = Tok::kEventually;
      else if (word == "G") k = Tok::kAlways;
      else if (word == "X") k = Tok::kNext;
      else throw ParseError("unknown identifier '" + word + "'", start);
      out.push_back({k, start, 0});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::kEnd, s.size()});
  return out;
}

class TokenCursor
{
public:
  TokenCursor(std::vector<Token> toks, std::optional<AtomBounds> bounds)
    : toks_(std::move(toks)), bounds_(bounds)
  {
  }

  const Token & peek() const { return toks_[i_]; }
  Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool accept(Tok k)
  {
    if (peek().kind == k) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const char * what)
  {
    if (!accept(k)) {
      throw ParseError(std::string("expected ") + what, peek().pos);
    }
  }

  AtomicProp parse_atom()
  {
    const std::size_t pos = peek().pos;
    expect(Tok::kPi, "'pi'");
    expect(Tok::kLParen, "'('");
    const Token r = next();
    if (r.kind != Tok::kInt) {
      throw ParseError("expected robot index", r.pos);
    }
    expect(Tok::kComma, "','");
    const Token l = next();
    if (l.kind != Tok::kInt) {
      throw ParseError("expected region index", l.pos);
    }
    expect(Tok::kRParen, "')'");
    AtomicProp a{static_cast<int>(r.value), static_cast<int>(l.value)};
    if (a.robot < 1 || a.region < 1) {
      throw ParseError("atom indices are 1-based", pos);
    }
    if (bounds_ && (a.robot > bounds_->n_robots || a.region > bounds_->n_regions)) {
      throw ParseError("atom " + to_string(a) + " out of declared bounds", pos);
    }
    return a;
  }

private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::optional<AtomBounds> bounds_;
};

// prop grammar:  or := and ('||' and)* ; and := unary ('&&' unary)* ;
//                unary := '!' unary | atom | true | false | '(' or ')'
class PropParser
{
public:
  explicit PropParser(TokenCursor & cur) : cur_(cur) {}

  PropFormula parse_or()
  {
    std::vector<PropFormula> xs{parse_and()};
    while (cur_.accept(Tok::kOr)) {
      xs.push_back(parse_and());
    }
    return xs.size() == 1 ? xs.front() : PropFormula::disj(std::move(xs));
  }

  PropFormula parse_and()
  {
    std::vector<PropFormula> xs{parse_unary()};
    while (cur_.accept(Tok::kAnd)) {
      xs.push_back(parse_unary());
    }
    return xs.size() == 1 ? xs.front() : PropFormula::conj(std::move(xs));
  }

  PropFormula parse_unary()
  {
    const Token & t = cur_.peek();
    switch (t.kind) {
      case Tok::kNot:
        cur_.next();
        return PropFormula::negate(parse_unary());
      case Tok::kTrue:
        cur_.next();
        return PropFormula::make_true();
      case Tok::kFalse:
        cur_.next();
        return PropFormula::make_false();
      case Tok::kPi:
        return PropFormula::atom(cur_.parse_atom());
      case Tok::kLParen: {
        cur_.next();
        PropFormula f = parse_or();
        cur_.expect(Tok::kRParen, "')'");
        return f;
      }
      case Tok::kUntil:
      case Tok::kRelease:
      case Tok::kEventually:
      case Tok::kAlways:
      case Tok::kNext:
        throw UnsupportedOperatorError("temporal operator in propositional formula", t.pos);
      default:
        throw ParseError("unexpected token", t.pos);
    }
  }

private:
  TokenCursor & cur_;
};

}  // namespace

PropFormula parse_prop(std::string_view text, std::optional<AtomBounds> bounds)
{
  TokenCursor cur(lex(text), bounds);
  PropParser p(cur);
  PropFormula f = p.parse_or();
  if (cur.peek().kind != Tok::kEnd) {
    throw ParseError("trailing input", cur.peek().pos);
  }
  return f;
}

// ---------------------------------------------------------------------------
// LtlFormula

struct LtlFormula::Node
{
  Kind kind;
  AtomicProp atom;
  std::vector<LtlFormula> children;
};

LtlFormula::LtlFormula()
  : node_(make_true().node_)
{
}

LtlFormula::LtlFormula(std::shared_ptr<const Node> node)
  : node_(std::move(node))
{
}

LtlFormula LtlFormula::make_true()
{
  static const auto node = std::make_shared<const Node>(Node{Kind::kTrue, {}, {}});
  return LtlFormula(node);
}

LtlFormula LtlFormula::make_false()
{
  static const auto node = std::make_shared<const Node>(Node{Kind::kFalse, {}, {}});
  return LtlFormula(node);
}

LtlFormula LtlFormula::atom(AtomicProp a)
{
  return LtlFormula(std::make_shared<const Node>(Node{Kind::kAtom, a, {}}));
}

LtlFormula LtlFormula::negate(LtlFormula f)
{
  return LtlFormula(std::make_shared<const Node>(Node{Kind::kNot, {}, {std::move(f)}}));
}

LtlFormula LtlFormula::conj(std::vector<LtlFormula> children)
{
  if (children.empty()) {
    return make_true();
  }
  if (children.size() == 1) {
    return children.front();
  }
  return LtlFormula(std::make_shared<const Node>(Node{Kind::kAnd, {}, std::move(children)}));
}

LtlFormula LtlFormula::disj(std::vector<LtlFormula> children)
{
  if (children.empty()) {
    return make_false();
  }
  if (children.size() == 1) {
    return children.front();
  }
  return LtlFormula(std::make_shared<const Node>(Node{Kind::kOr, {}, std::move(children)}));
}

LtlFormula LtlFormula::until(LtlFormula lhs, LtlFormula rhs)
{
  return LtlFormula(std::make_shared<const Node>(Node{Kind::kUntil, {}, {std::move(lhs), std::move(rhs)}}));
}

LtlFormula LtlFormula::release(LtlFormula lhs, LtlFormula rhs)
{
  return LtlFormula(
    std::make_shared<const Node>(Node{Kind::kRelease, {}, {std::move(lhs), std::move(rhs)}}));
}

LtlFormula LtlFormula::eventually(LtlFormula f)
{
  return LtlFormula(std::make_shared<const Node>(Node{Kind::kEventually, {}, {std::move(f)}}));
}

LtlFormula LtlFormula::always(LtlFormula f)
{
  return LtlFormula(std::make_shared<const Node>(Node{Kind::kAlways, {}, {std::move(f)}}));
}

LtlFormula::Kind LtlFormula::kind() const { return node_->kind; }
const AtomicProp & LtlFormula::atom_prop() const { return node_->atom; }
const std::vector<LtlFormula> & LtlFormula::children() const { return node_->children; }

bool LtlFormula::operator==(const LtlFormula & other) const { return compare(*this, other) == 0; }

int LtlFormula::compare(const LtlFormula & a, const LtlFormula & b)
{
  if (a.node_ == b.node_) {
    return 0;
  }
  if (a.kind() != b.kind()) {
    return a.kind() < b.kind() ? -1 : 1;
  }
  if (a.kind() == Kind::kAtom) {
    if (a.atom_prop() == b.atom_prop()) {
      return 0;
    }
    return a.atom_prop() < b.atom_prop() ? -1 : 1;
  }
  const auto & ca = a.children();
  const auto & cb = b.children();
  if (ca.size() != cb.size()) {
    return ca.size() < cb.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (int c = compare(ca[i], cb[i]); c != 0) {
      return c;
    }
  }
  return 0;
}

namespace
{

bool ltl_needs_parens(const LtlFormula & f)
{
  using K = LtlFormula::Kind;
  return f.kind() == K::kAnd || f.kind() == K::kOr || f.kind() == K::kUntil || f.kind() == K::kRelease;
}

void print_ltl(const LtlFormula & f, std::string & out)
{
  using K = LtlFormula::Kind;
  auto child = [&out](const LtlFormula & c) {
    if (ltl_needs_parens(c)) {
      out += "(";
      print_ltl(c, out);
      out += ")";
    } else {
      print_ltl(c, out);
    }
  };
  switch (f.kind()) {
    case K::kTrue: out += "true"; return;
    case K::kFalse: out += "false"; return;
    case K::kAtom: out += to_string(f.atom_prop()); return;
    case K::kNot: out += "!"; child(f.children().front()); return;
    case K::kEventually: out += "F "; child(f.children().front()); return;
    case K::kAlways: out += "G "; child(f.children().front()); return;
    case K::kUntil:
    case K::kRelease:
      child(f.children()[0]);
      out += f.kind() == K::kUntil ? " U " : " R ";
      child(f.children()[1]);
      return;
    case K::kAnd:
    case K::kOr: {
      const char * op = f.kind() == K::kAnd ? " && " : " || ";
      bool first = true;
      for (const auto & c : f.children()) {
        if (!first) {
          out += op;
        }
        first = false;
        child(c);
      }
      return;
    }
  }
}

// ltl grammar: or := and ('||' and)* ; and := bin ('&&' bin)* ;
//              bin := unary (('U'|'R') bin)? ; unary := ('!'|'F'|'G'|'<>'|'[]') unary | primary
class LtlParser
{
public:
  explicit LtlParser(TokenCursor & cur) : cur_(cur) {}

  LtlFormula parse_or()
  {
    std::vector<LtlFormula> xs{parse_and()};
    while (cur_.accept(Tok::kOr)) {
      xs.push_back(parse_and());
    }
    return xs.size() == 1 ? xs.front() : LtlFormula::disj(std::move(xs));
  }

  LtlFormula parse_and()
  {
    std::vector<LtlFormula> xs{parse_binary()};
    while (cur_.accept(Tok::kAnd)) {
      xs.push_back(parse_binary());
    }
    return xs.size() == 1 ? xs.front() : LtlFormula::conj(std::move(xs));
  }

  LtlFormula parse_binary()
  {
    LtlFormula lhs = parse_unary();
    if (cur_.accept(Tok::kUntil)) {
      return LtlFormula::until(lhs, parse_binary());
    }
    if (cur_.accept(Tok::kRelease)) {
      return LtlFormula::release(lhs, parse_binary());
    }
    return lhs;
  }

  LtlFormula parse_unary()
  {
    const Token & t = cur_.peek();
    switch (t.kind) {
      case Tok::kNot:
        cur_.next();
        return LtlFormula::negate(parse_unary());
      case Tok::kEventually:
        cur_.next();
        return LtlFormula::eventually(parse_unary());
      case Tok::kAlways:
        cur_.next();
        return LtlFormula::always(parse_unary());
      case Tok::kNext:
        throw UnsupportedOperatorError("unsupported operator 'X' (next)", t.pos);
      case Tok::kTrue:
        cur_.next();
        return LtlFormula::make_true();
      case Tok::kFalse:
        cur_.next();
        return LtlFormula::make_false();
      case Tok::kPi:
        return LtlFormula::atom(cur_.parse_atom());
      case Tok::kLParen: {
        cur_.next();
        LtlFormula f = parse_or();
        cur_.expect(Tok::kRParen, "')'");
        return f;
      }
      default:
        throw ParseError("unexpected token", t.pos);
    }
  }

private:
  TokenCursor & cur_;
};

}  // namespace

std::string LtlFormula::to_string() const
{
  std::string out;
  print_ltl(*this, out);
  return out;
}

LtlFormula parse_ltl(std::string_view text, std::optional<AtomBounds> bounds)
{
  TokenCursor cur(lex(text), bounds);
  LtlParser p(cur);
  LtlFormula f = p.parse_or();
  if (cur.peek().kind != Tok::kEnd) {
    throw ParseError("trailing input", cur.peek().pos);
  }
  return f;
}

namespace
{

LtlFormula nnf_rec(const LtlFormula & f, bool neg)
{
  using K = LtlFormula::Kind;
  const auto & c = f.children();
  auto map_all = [&](bool n) {
    std::vector<LtlFormula> out;
    out.reserve(c.size());
    for (const auto & x : c) {
      out.push_back(nnf_rec(x, n));
    }
    return out;
  };
  switch (f.kind()) {
    case K::kTrue: return neg ? LtlFormula::make_false() : f;
    case K::kFalse: return neg ? LtlFormula::make_true() : f;
    case K::kAtom: return neg ? LtlFormula::negate(f) : f;
    case K::kNot: return nnf_rec(c.front(), !neg);
    case K::kAnd: return neg ? LtlFormula::disj(map_all(true)) : LtlFormula::conj(map_all(false));
    case K::kOr: return neg ? LtlFormula::conj(map_all(true)) : LtlFormula::disj(map_all(false));
    case K::kUntil:
      return neg ? LtlFormula::release(nnf_rec(c[0], true), nnf_rec(c[1], true))
                 : LtlFormula::until(nnf_rec(c[0], false), nnf_rec(c[1], false));
    case K::kRelease:
      return neg ? LtlFormula::until(nnf_rec(c[0], true), nnf_rec(c[1], true))
                 : LtlFormula::release(nnf_rec(c[0], false), nnf_rec(c[1], false));
    case K::kEventually:
      return neg ? LtlFormula::always(nnf_rec(c[0], true)) : LtlFormula::eventually(nnf_rec(c[0], false));
    case K::kAlways:
      return neg ? LtlFormula::eventually(nnf_rec(c[0], true)) : LtlFormula::always(nnf_rec(c[0], false));
  }
  return f;
}

void collect_ltl_atoms(const LtlFormula & f, std::set<AtomicProp> & out)
{
  if (f.kind() == LtlFormula::Kind::kAtom) {
    out.insert(f.atom_prop());
  }
  for (const auto & c : f.children()) {
    collect_ltl_atoms(c, out);
  }
}

}  // namespace

LtlFormula nnf(const LtlFormula & f) { return nnf_rec(f, false); }

std::vector<AtomicProp> atoms_of(const LtlFormula & f)
{
  std::set<AtomicProp> s;
  collect_ltl_atoms(f, s);
  return {s.begin(), s.end()};
}

}  // namespace tlrrt
