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

#include "listfn/types.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "listfn/error.hpp"

namespace listfn {

struct Type::Node {
  Kind kind;
  std::vector<std::string> names;
  std::vector<Type> kids;
};

namespace {

const Type& bot_singleton() {
  static const Type t = Type::bot();
  return t;
}

bool is_reserved(std::string_view s) { return s == "bot" || s == "inl" || s == "inr"; }

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'';
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || is_reserved(s)) return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

Type::Type() : Type(bot_singleton()) {}

Type Type::atom(std::string name) {
  if (!is_identifier(name)) throw TypeError("invalid atom name '" + name + "'");
  return Type(std::make_shared<const Node>(Node{Kind::Atom, {std::move(name)}, {}}));
}

Type Type::finset(std::vector<std::string> names) {
  if (names.empty()) throw TypeError("finite set must be nonempty");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!is_identifier(n)) throw TypeError("invalid atom name '" + n + "'");
    if (!seen.insert(n).second) throw TypeError("duplicate name '" + n + "' in finite set");
  }
  return Type(std::make_shared<const Node>(Node{Kind::FinSet, std::move(names), {}}));
}

Type Type::sum(Type left, Type right) {
  return Type(std::make_shared<const Node>(Node{Kind::Sum, {}, {std::move(left), std::move(right)}}));
}

Type Type::prod(Type left, Type right) {
  return Type(std::make_shared<const Node>(Node{Kind::Prod, {}, {std::move(left), std::move(right)}}));
}

Type Type::list(Type elem) {
  return Type(std::make_shared<const Node>(Node{Kind::List, {}, {std::move(elem)}}));
}

Type Type::bot() { return Type(std::make_shared<const Node>(Node{Kind::Bot, {}, {}})); }

Type::Kind Type::kind() const { return node_->kind; }
bool Type::is_atoms() const { return node_->kind == Kind::Atom || node_->kind == Kind::FinSet; }
const std::vector<std::string>& Type::names() const { return node_->names; }

bool Type::has_name(std::string_view name) const { return name_index(name) >= 0; }

int Type::name_index(std::string_view name) const {
  const auto& ns = node_->names;
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] == name) return static_cast<int>(i);
  return -1;
}

const Type& Type::left() const { return node_->kids.at(0); }
const Type& Type::right() const { return node_->kids.at(1); }
const Type& Type::elem() const { return node_->kids.at(0); }

std::size_t Type::arity() const {
  if (node_->kind == Kind::FinSet) return node_->names.size();
  return node_->kids.size();
}

Type Type::child(std::size_t i) const {
  if (node_->kind == Kind::FinSet) return atom(node_->names.at(i));
  return node_->kids.at(i);
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_atoms() && b.is_atoms()) {
    if (a.names().size() != b.names().size()) return false;
    return std::all_of(a.names().begin(), a.names().end(),
                       [&](const std::string& n) { return b.has_name(n); });
  }
  if (a.kind() != b.kind()) return false;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (!(ka[i] == kb[i])) return false;
  return true;
}

namespace {

void collect_nodes(const Type& t, Path& path, std::vector<TypeNode>& out) {
  out.push_back({path, t});
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_nodes(t.child(i), path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<TypeNode> type_nodes(const Type& t) {
  std::vector<TypeNode> out;
  Path p;
  collect_nodes(t, p, out);
  return out;
}

Type type_at(const Type& t, const Path& path) {
  Type cur = t;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur.arity())
      throw TypeError("invalid type path component " + std::to_string(i));
    cur = cur.child(static_cast<std::size_t>(i));
  }
  return cur;
}

std::string type_predicate_name(const Path& path) {
  std::string s = "ty";
  for (int i : path) s += "_" + std::to_string(i);
  return s;
}

SumShape make_sum(const Type& left, const Type& right) {
  if (left.is_atoms() && right.is_atoms()) {
    bool disjoint = std::none_of(left.names().begin(), left.names().end(),
                                 [&](const std::string& n) { return right.has_name(n); });
    if (disjoint) {
      std::vector<std::string> all = left.names();
      all.insert(all.end(), right.names().begin(), right.names().end());
      return {left, right, Type::finset(std::move(all)), true};
    }
  }
  return {left, right, Type::sum(left, right), false};
}

Type canonical(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Sum:
      return sum_of(canonical(t.left()), canonical(t.right()));
    case Type::Kind::Prod:
      return Type::prod(canonical(t.left()), canonical(t.right()));
    case Type::Kind::List:
      return Type::list(canonical(t.elem()));
    default:
      return t;
  }
}

std::size_t type_depth(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Sum:
      return std::max(type_depth(t.left()), type_depth(t.right()));
    case Type::Kind::Prod:
      return 1 + std::max(type_depth(t.left()), type_depth(t.right()));
    case Type::Kind::List:
      return 1 + type_depth(t.elem());
    default:
      return 0;
  }
}

// ---------------------------------------------------------------------------
// Text syntax. Precedence from loosest: '+' (right assoc), product, postfix
// list star.

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  Type parse_all() {
    Type t = parse_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError("type: " + msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool starts_with(std::string_view tok) const { return s_.substr(pos_, tok.size()) == tok; }

  bool at_product_sign() const { return starts_with("\xC3\x97"); }

  bool primary_start_at(std::size_t p) const {
    if (p >= s_.size()) return false;
    char c = s_[p];
    return c == '{' || c == '(' || c == '[' || c == '1' || s_.substr(p, 3) == "bot";
  }

  std::size_t next_nonspace(std::size_t p) const {
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p;
  }

  Type parse_sum() {
    Type l = parse_prod();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '+') {
      ++pos_;
      return Type::sum(l, parse_sum());
    }
    return l;
  }

  Type parse_prod() {
    Type l = parse_postfix();
    skip_ws();
    if (at_product_sign()) {
      pos_ += 2;
      return Type::prod(l, parse_prod());
    }
    if (pos_ < s_.size() && s_[pos_] == '*' && primary_start_at(next_nonspace(pos_ + 1))) {
      ++pos_;
      return Type::prod(l, parse_prod());
    }
    return l;
  }

  Type parse_postfix() {
    Type t = parse_primary();
    for (;;) {
      skip_ws();
      if (starts_with("^*")) {
        pos_ += 2;
        t = Type::list(t);
      } else if (pos_ < s_.size() && s_[pos_] == '*' && !primary_start_at(next_nonspace(pos_ + 1))) {
        ++pos_;
        t = Type::list(t);
      } else {
        return t;
      }
    }
  }

  Type parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '{') {
      ++pos_;
      std::vector<std::string> names;
      for (;;) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (!is_identifier(name)) fail("expected element name");
        names.push_back(std::move(name));
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == '}') {
          ++pos_;
          break;
        }
        fail("expected ',' or '}'");
      }
      try {
        return Type::finset(std::move(names));
      } catch (const TypeError& e) {
        fail(e.what());
      }
    }
    if (c == '(') {
      ++pos_;
      Type t = parse_sum();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    if (c == '[') {
      ++pos_;
      Type t = parse_sum();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ']') fail("expected ']'");
      ++pos_;
      return Type::list(t);
    }
    if (c == '1' && (pos_ + 1 >= s_.size() || !ident_char(s_[pos_ + 1]))) {
      ++pos_;
      return Type::unit();
    }
    if (starts_with("bot") && (pos_ + 3 >= s_.size() || !ident_char(s_[pos_ + 3]))) {
      pos_ += 3;
      return Type::bot();
    }
    fail("expected a type");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// 0: sum, 1: product, 2: postfix/primary.
int level(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Sum: return 0;
    case Type::Kind::Prod: return 1;
    default: return 2;
  }
}

void render(const Type& t, int ctx, std::string& out) {
  bool paren = level(t) < ctx;
  if (paren) out += '(';
  switch (t.kind()) {
    case Type::Kind::Atom:
      if (t.names()[0] == "1") {
        out += '1';
      } else {
        out += '{' + t.names()[0] + '}';
      }
      break;
    case Type::Kind::FinSet:
      out += '{';
      for (std::size_t i = 0; i < t.names().size(); ++i) {
        if (i) out += ',';
        out += t.names()[i];
      }
      out += '}';
      break;
    case Type::Kind::Bot:
      out += "bot";
      break;
    case Type::Kind::List:
      render(t.elem(), 2, out);
      out += '*';
      break;
    case Type::Kind::Prod:
      render(t.left(), 2, out);
      out += "\xC3\x97";
      render(t.right(), 1, out);
      break;
    case Type::Kind::Sum:
      render(t.left(), 1, out);
      out += '+';
      render(t.right(), 0, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

Type parse_type(std::string_view text) { return TypeParser(text).parse_all(); }

std::string render_type(const Type& t) {
  std::string out;
  render(t, 0, out);
  return out;
}

}  // namespace listfn
