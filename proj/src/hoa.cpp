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

// HOA v1 subset: state-based Buchi acceptance, explicit labels, no aliases.

#include <cctype>
#include <set>
#include <sstream>

#include "tlrrt/buchi.hpp"

namespace tlrrt
{

namespace
{

enum class HTok { kHeader, kIdent, kInt, kString, kPunct, kBody, kEnd, kEof };

struct HToken
{
  HTok kind;
  std::string text;
  long value = 0;
};

std::vector<HToken> hoa_lex(std::string_view s)
{
  std::vector<HToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (s.substr(i, 2) == "/*") {
      const auto end = s.find("*/", i + 2);
      if (end == std::string_view::npos) {
        throw HoaError("unterminated comment");
      }
      i = end + 2;
      continue;
    }
    if (s.substr(i, 8) == "--BODY--") {
      out.push_back({HTok::kBody, "--BODY--"});
      i += 8;
      continue;
    }
    if (s.substr(i, 7) == "--END--") {
      out.push_back({HTok::kEnd, "--END--"});
      i += 7;
      continue;
    }
    if (c == '"') {
      std::string text;
      ++i;
      while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\' && i + 1 < s.size()) {
          ++i;
        }
        text += s[i++];
      }
      if (i >= s.size()) {
        throw HoaError("unterminated string");
      }
      ++i;
      out.push_back({HTok::kString, text});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = 0;
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i++] - '0');
        if (v > 100000000) {
          throw HoaError("integer too large");
        }
      }
      out.push_back({HTok::kInt, std::string(s.substr(start, i - start)), v});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
      const std::size_t start = i;
      ++i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '-' || s[i] == '.')) {
        ++i;
      }
      std::string word(s.substr(start, i - start));
      if (i < s.size() && s[i] == ':') {
        ++i;
        out.push_back({HTok::kHeader, word});
      } else {
        out.push_back({HTok::kIdent, word});
      }
      continue;
    }
    out.push_back({HTok::kPunct, std::string(1, c)});
    ++i;
  }
  out.push_back({HTok::kEof, ""});
  return out;
}

class HoaParser
{
public:
  HoaParser(std::string_view text, const ApMap & ap_map) : toks_(hoa_lex(text)), ap_map_(ap_map) {}

  Nba parse()
  {
    parse_header();
    if (!n_states_) {
      throw HoaError("missing States: header");
    }
    if (!saw_acceptance_) {
      throw HoaError("missing Acceptance: header");
    }
    Nba nba(*n_states_);
    for (int q : start_) {
      check_state(q);
      nba.add_initial(q);
    }
    expect(HTok::kBody, "--BODY--");
    while (peek().kind == HTok::kHeader && peek().text == "State") {
      next();
      if (is_punct("[")) {
        throw HoaError("state labels are not supported");
      }
      const int q = expect_int("state index");
      check_state(q);
      if (peek().kind == HTok::kString) {
        next();
      }
      if (is_punct("{")) {
        for (int a : parse_acc_set()) {
          if (a != 0) {
            throw HoaError("acceptance set index out of range");
          }
          nba.add_accepting(q);
        }
      }
      while (is_punct("[") || peek().kind == HTok::kInt) {
        if (!is_punct("[")) {
          throw HoaError("implicit labels are not supported");
        }
        next();
        const PropFormula guard = parse_or();
        expect_punct("]");
        const int dst = expect_int("destination state");
        check_state(dst);
        if (is_punct("&")) {
          throw HoaError("universal branching is not supported");
        }
        if (is_punct("{")) {
          throw HoaError("transition-based acceptance is not supported");
        }
        nba.add_transition(q, guard, dst);
      }
    }
    expect(HTok::kEnd, "--END--");
    return nba;
  }

private:
  const HToken & peek() const { return toks_[i_]; }
  HToken next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool is_punct(const char * p) const { return peek().kind == HTok::kPunct && peek().text == p; }
  void expect(HTok k, const char * what)
  {
    if (peek().kind != k) {
      throw HoaError(std::string("expected ") + what + ", found '" + peek().text + "'");
    }
    next();
  }
  void expect_punct(const char * p)
  {
    if (!is_punct(p)) {
      throw HoaError(std::string("expected '") + p + "', found '" + peek().text + "'");
    }
    next();
  }
  int expect_int(const char * what)
  {
    if (peek().kind != HTok::kInt) {
      throw HoaError(std::string("expected ") + what);
    }
    return static_cast<int>(next().value);
  }
  void check_state(int q) const
  {
    if (q < 0 || q >= *n_states_) {
      throw HoaError("state " + std::to_string(q) + " out of range");
    }
  }

  // Tokens up to the next header or --BODY--.
  std::vector<HToken> header_value()
  {
    std::vector<HToken> v;
    while (peek().kind != HTok::kHeader && peek().kind != HTok::kBody && peek().kind != HTok::kEof) {
      v.push_back(next());
    }
    return v;
  }

  void parse_header()
  {
    if (peek().kind != HTok::kHeader || peek().text != "HOA") {
      throw HoaError("document must start with HOA:");
    }
    next();
    if (peek().kind != HTok::kIdent || peek().text != "v1") {
      throw HoaError("only HOA v1 is supported");
    }
    next();
    while (peek().kind == HTok::kHeader) {
      const std::string name = next().text;
      auto value = header_value();
      if (name == "States") {
        if (value.size() != 1 || value[0].kind != HTok::kInt) {
          throw HoaError("malformed States: header");
        }
        n_states_ = static_cast<int>(value[0].value);
      } else if (name == "Start") {
        if (value.size() != 1 || value[0].kind != HTok::kInt) {
          throw HoaError("malformed Start: header (conjunctive start is not supported)");
        }
        start_.push_back(static_cast<int>(value[0].value));
      } else if (name == "AP") {
        if (value.empty() || value[0].kind != HTok::kInt ||
            static_cast<long>(value.size()) != value[0].value + 1) {
          throw HoaError("malformed AP: header");
        }
        for (std::size_t k = 1; k < value.size(); ++k) {
          if (value[k].kind != HTok::kString) {
            throw HoaError("malformed AP: header");
          }
          aps_.push_back(map_ap(value[k].text));
        }
      } else if (name == "acc-name") {
        if (value.empty() || value[0].text != "Buchi") {
          throw HoaError("unsupported acceptance: " + (value.empty() ? std::string() : value[0].text));
        }
      } else if (name == "Acceptance") {
        std::string joined;
        for (const auto & t : value) {
          joined += t.text;
        }
        if (joined != "1Inf(0)") {
          throw HoaError("unsupported acceptance condition");
        }
        saw_acceptance_ = true;
      } else if (name == "Alias") {
        throw HoaError("aliases are not supported");
      }
      // name, tool, properties and unknown headers are ignored.
    }
  }

  AtomicProp map_ap(const std::string & name) const
  {
    if (!ap_map_.empty()) {
      auto it = ap_map_.find(name);
      if (it == ap_map_.end()) {
        throw HoaError("unmapped AP name '" + name + "'");
      }
      return it->second;
    }
    PropFormula f;
    try {
      f = parse_prop(name);
    } catch (const ParseError &) {
      throw HoaError("unmapped AP name '" + name + "'");
    }
    if (f.kind() != PropFormula::Kind::kAtom) {
      throw HoaError("unmapped AP name '" + name + "'");
    }
    return f.atom_prop();
  }

  std::vector<int> parse_acc_set()
  {
    expect_punct("{");
    std::vector<int> out;
    while (peek().kind == HTok::kInt) {
      out.push_back(static_cast<int>(next().value));
    }
    expect_punct("}");
    return out;
  }

  PropFormula parse_or()
  {
    std::vector<PropFormula> xs{parse_and()};
    while (is_punct("|")) {
      next();
      xs.push_back(parse_and());
    }
    return PropFormula::disj(std::move(xs));
  }

  PropFormula parse_and()
  {
    std::vector<PropFormula> xs{parse_not()};
    while (is_punct("&")) {
      next();
      xs.push_back(parse_not());
    }
    return PropFormula::conj(std::move(xs));
  }

  PropFormula parse_not()
  {
    if (is_punct("!")) {
      next();
      return PropFormula::negate(parse_not());
    }
    if (is_punct("(")) {
      next();
      PropFormula f = parse_or();
      expect_punct(")");
      return f;
    }
    if (peek().kind == HTok::kIdent && (peek().text == "t" || peek().text == "f")) {
      return next().text == "t" ? PropFormula::make_true() : PropFormula::make_false();
    }
    if (peek().kind == HTok::kInt) {
      const auto k = static_cast<std::size_t>(next().value);
      if (k >= aps_.size()) {
        throw HoaError("AP index " + std::to_string(k) + " out of range");
      }
      return PropFormula::atom(aps_[k]);
    }
    throw HoaError("malformed label expression near '" + peek().text + "'");
  }

  std::vector<HToken> toks_;
  std::size_t i_ = 0;
  const ApMap & ap_map_;
  std::optional<int> n_states_;
  std::vector<int> start_;
  std::vector<AtomicProp> aps_;
  bool saw_acceptance_ = false;
};

}  // namespace

Nba parse_hoa(std::string_view text, const ApMap & ap_map)
{
  return HoaParser(text, ap_map).parse();
}

std::string to_hoa(const Nba & nba, const std::string & name)
{
  std::set<AtomicProp> used;
  for (const auto & t : nba.transitions()) {
    for (const auto & c : t.dnf) {
      used.insert(c.positives.begin(), c.positives.end());
      used.insert(c.negatives.begin(), c.negatives.end());
    }
  }
  const std::vector<AtomicProp> aps(used.begin(), used.end());
  auto ap_index = [&aps](const AtomicProp & a) {
    return std::lower_bound(aps.begin(), aps.end(), a) - aps.begin();
  };

  std::ostringstream os;
  os << "HOA: v1\n";
  if (!name.empty()) {
    os << "name: \"" << name << "\"\n";
  }
  os << "States: " << nba.num_states() << "\n";
  for (int q : nba.initial()) {
    os << "Start: " << q << "\n";
  }
  os << "AP: " << aps.size();
  for (const auto & a : aps) {
    os << " \"" << to_string(a) << "\"";
  }
  os << "\nacc-name: Buchi\nAcceptance: 1 Inf(0)\nproperties: trans-labels explicit-labels state-acc\n";
  os << "--BODY--\n";
  for (int q = 0; q < nba.num_states(); ++q) {
    os << "State: " << q;
    if (nba.is_accepting(q)) {
      os << " {0}";
    }
    os << "\n";
    for (int t : nba.out_edges(q)) {
      const auto & tr = nba.transitions()[static_cast<std::size_t>(t)];
      std::string label;
      for (std::size_t c = 0; c < tr.dnf.size(); ++c) {
        const auto & cl = tr.dnf[c];
        std::string lits;
        // Literals in AP order, positives before negatives of the same index never co-occur.
        std::vector<std::pair<long, bool>> xs;
        for (const auto & a : cl.positives) {
          xs.emplace_back(ap_index(a), true);
        }
        for (const auto & a : cl.negatives) {
          xs.emplace_back(ap_index(a), false);
        }
        std::sort(xs.begin(), xs.end());
        for (const auto & [k, positive] : xs) {
          if (!lits.empty()) {
            lits += "&";
          }
          lits += (positive ? "" : "!") + std::to_string(k);
        }
        if (lits.empty()) {
          lits = "t";
        }
        if (c > 0) {
          label += " | ";
        }
        label += tr.dnf.size() > 1 && xs.size() > 1 ? "(" + lits + ")" : lits;
      }
      os << "[" << label << "] " << tr.dst << "\n";
    }
  }
  os << "--END--\n";
  return os.str();
}

}  // namespace tlrrt
