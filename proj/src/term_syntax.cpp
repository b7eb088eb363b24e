/* Copyright 2026 The listfn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "listfn/term_syntax.hpp"

#include <cctype>
#include <vector>

#include "listfn/error.hpp"
#include "listfn/stdlib.hpp"

namespace listfn {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Splits on `sep` at bracket depth zero.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.emplace_back(s.substr(start));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

class TermParser {
 public:
  TermParser(std::string_view s, const TermEnv& env) : s_(s), env_(env) {}

  Term parse_all() {
    Term t = parse();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError("term: " + msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size()) {
      if (is_space(s_[pos_])) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  // A balanced chunk: stops at whitespace or an unmatched ')' at depth zero.
  std::string chunk() {
    skip_ws();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (depth == 0 && (is_space(c) || c == ')')) break;
      if (c == '(' || c == '[' || c == '{') ++depth;
      if (c == ')' || c == ']' || c == '}') {
        if (--depth < 0) fail("unbalanced brackets");
      }
      ++pos_;
    }
    if (depth != 0) fail("unbalanced brackets");
    if (start == pos_) fail("expected an argument");
    return std::string(s_.substr(start, pos_ - start));
  }

  void expect_close() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
    ++pos_;
  }

  bool at_close() {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == ')';
  }

  Type type_arg(const std::string& text, std::size_t at) {
    try {
      return parse_type(text);
    } catch (const SyntaxError& e) {
      throw SyntaxError(std::string("term: ") + e.what(), at);
    }
  }

  Term parse() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] != '(') return parse_basic();
    ++pos_;
    skip_ws();
    std::size_t head_start = pos_;
    while (pos_ < s_.size() && !is_space(s_[pos_]) && s_[pos_] != '(' && s_[pos_] != ')') ++pos_;
    std::string head(s_.substr(head_start, pos_ - head_start));
    if (head == "const") return parse_const();
    if (head.rfind("std:", 0) == 0) {
      std::vector<std::string> args;
      while (!at_close()) args.push_back(chunk());
      expect_close();
      TermEnv env = env_;
      auto sub = [env](std::string_view text) { return parse_term(text, env); };
      return stdlib::build(head.substr(4), args, sub).term;
    }
    if (head == "gprefix") {
      std::size_t at = pos_;
      std::string name = chunk();
      expect_close();
      if (auto it = env_.groups.find(name); it != env_.groups.end()) return Term::prefix_group(it->second);
      if (name.size() > 1 && name[0] == 'Z' && name.find_first_not_of("0123456789", 1) == std::string::npos)
        return Term::prefix_group(GroupSpec::cyclic(std::stoi(name.substr(1))));
      throw SyntaxError("term: unknown group '" + name + "'", at);
    }
    std::vector<Term> args;
    while (!at_close()) args.push_back(parse());
    expect_close();
    auto want = [&](std::size_t n) {
      if (args.size() != n) fail("'" + head + "' expects " + std::to_string(n) + " arguments");
    };
    if (head == "compose") {
      if (args.size() < 2) fail("'compose' expects at least 2 arguments");
      Term acc = args.back();
      for (std::size_t i = args.size() - 1; i-- > 0;) acc = Term::compose(args[i], acc);
      return acc;
    }
    if (head == "map") {
      want(1);
      return Term::map(args[0]);
    }
    if (head == "pair") {
      want(2);
      return Term::pair(args[0], args[1]);
    }
    if (head == "union") {
      want(2);
      return Term::union_of(args[0], args[1]);
    }
    if (head == "guard") {
      want(3);
      return Term::guarded(args[0], args[1], args[2]);
    }
    throw SyntaxError("term: unknown form '" + head + "'", head_start);
  }

  Term parse_const() {
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '(' || c == '[' || c == '{') ++depth;
      if (c == ')' || c == ']' || c == '}') {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    std::string body(s_.substr(start, pos_ - start));
    expect_close();
    auto colon = split_top(body, ':');
    if (colon.size() != 2) throw SyntaxError("term: const needs 'value : T -> U'", start);
    std::string types = colon[1];
    std::size_t arrow = std::string::npos;
    int d = 0;
    for (std::size_t i = 0; i + 1 < types.size(); ++i) {
      char c = types[i];
      if (c == '(' || c == '[' || c == '{') ++d;
      if (c == ')' || c == ']' || c == '}') --d;
      if (d == 0 && c == '-' && types[i + 1] == '>') {
        arrow = i;
        break;
      }
    }
    if (arrow == std::string::npos) throw SyntaxError("term: const needs '->'", start);
    Type dom = type_arg(trim(types.substr(0, arrow)), start);
    Type cod = type_arg(trim(types.substr(arrow + 2)), start);
    Value v = parse_value(trim(colon[0]), canonical(cod));
    return Term::constant(v, dom, cod);
  }

  Term parse_basic() {
    std::size_t at = pos_;
    std::string tok = chunk();
    auto sep = tok.find('@');
    if (sep == std::string::npos) throw SyntaxError("term: expected a basic function, got '" + tok + "'", at);
    std::string name = tok.substr(0, sep);
    std::string rest = tok.substr(sep + 1);
    auto types = [&](std::size_t n) {
      auto parts = split_top(rest, ',');
      if (parts.size() != n)
        throw SyntaxError("term: '" + name + "' expects " + std::to_string(n) + " type parameters", at);
      std::vector<Type> ts;
      for (const auto& p : parts) ts.push_back(type_arg(p, at));
      return ts;
    };
    if (name == "reverse") return Term::reverse(types(1)[0]);
    if (name == "flat") return Term::flat(types(1)[0]);
    if (name == "append") return Term::append(types(1)[0]);
    if (name == "coappend") return Term::coappend(types(1)[0]);
    if (name == "block") {
      Type t = types(1)[0];
      if (t.kind() != Type::Kind::Sum) throw SyntaxError("term: block expects a sum type T+U", at);
      return Term::block(t.left(), t.right());
    }
    if (name == "proj1" || name == "proj2" || name == "inlco" || name == "inrco") {
      auto ts = types(2);
      if (name == "proj1") return Term::proj1(ts[0], ts[1]);
      if (name == "proj2") return Term::proj2(ts[0], ts[1]);
      if (name == "inlco") return Term::coproj_l(ts[0], ts[1]);
      return Term::coproj_r(ts[0], ts[1]);
    }
    if (name == "dist") {
      auto ts = types(3);
      return Term::distribute(ts[0], ts[1], ts[2]);
    }
    throw SyntaxError("term: unknown basic function '" + name + "'", at);
  }

  std::string_view s_;
  const TermEnv& env_;
  std::size_t pos_ = 0;
};

void render_into(const Term& t, std::string& out) {
  const auto& P = t.params();
  auto basic = [&](const char* name) {
    out += name;
    out += '@';
    for (std::size_t i = 0; i < P.size(); ++i) {
      if (i) out += ',';
      out += render_type(P[i]);
    }
  };
  auto form = [&](const char* name) {
    out += '(';
    out += name;
    for (const auto& a : t.args()) {
      out += ' ';
      render_into(a, out);
    }
    out += ')';
  };
  switch (t.op()) {
    case Term::Op::Const:
      out += "(const " + render_value(t.value()) + " : " + render_type(P[0]) + " -> " + render_type(P[1]) + ")";
      break;
    case Term::Op::Proj1: basic("proj1"); break;
    case Term::Op::Proj2: basic("proj2"); break;
    case Term::Op::CoProjL: basic("inlco"); break;
    case Term::Op::CoProjR: basic("inrco"); break;
    case Term::Op::Distribute: basic("dist"); break;
    case Term::Op::Reverse: basic("reverse"); break;
    case Term::Op::Flat: basic("flat"); break;
    case Term::Op::Append: basic("append"); break;
    case Term::Op::CoAppend: basic("coappend"); break;
    case Term::Op::Block:
      out += "block@" + render_type(Type::sum(P[0], P[1]));
      break;
    case Term::Op::Union: form("union"); break;
    case Term::Op::Compose: form("compose"); break;
    case Term::Op::Map: form("map"); break;
    case Term::Op::Pair: form("pair"); break;
    case Term::Op::Guarded: form("guard"); break;
    case Term::Op::PrefixGroupMult:
      out += "(gprefix " + t.group().name() + ")";
      break;
  }
}

}  // namespace

Term parse_term(std::string_view text, const TermEnv& env) { return TermParser(text, env).parse_all(); }

std::string render_term(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

}  // namespace listfn
