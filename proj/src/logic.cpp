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

#include "listfn/logic.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <sstream>

#include "listfn/error.hpp"

namespace listfn {

// ---------------------------------------------------------------------------
// Structures.

bool Structure::holds(const std::string& rel, const Tuple& t) const {
  auto it = rels.find(rel);
  return it != rels.end() && it->second.count(t) > 0;
}

void Structure::validate() const {
  if (!std::is_sorted(universe.begin(), universe.end()) ||
      std::adjacent_find(universe.begin(), universe.end()) != universe.end())
    throw TypeError("structure: universe must be sorted and distinct");
  for (const auto& [name, tuples] : rels) {
    auto a = vocab.find(name);
    if (a == vocab.end()) throw TypeError("structure: relation '" + name + "' is not in the vocabulary");
    for (const auto& t : tuples) {
      if (static_cast<int>(t.size()) != a->second)
        throw TypeError("structure: tuple of wrong arity in '" + name + "'");
      for (int e : t)
        if (!std::binary_search(universe.begin(), universe.end(), e))
          throw TypeError("structure: tuple in '" + name + "' mentions element " + std::to_string(e) +
                          " outside the universe");
    }
  }
}

// ---------------------------------------------------------------------------
// Formulas.

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<std::string> vars;
  std::vector<Formula> kids;
};

Formula::Formula() : Formula(std::make_shared<Node>(Node{Kind::False, "", {}, {}})) {}

Formula Formula::truth(bool b) { return Formula(std::make_shared<Node>(Node{b ? Kind::True : Kind::False, "", {}, {}})); }
Formula Formula::rel(std::string name, std::vector<std::string> vars) {
  return Formula(std::make_shared<Node>(Node{Kind::Rel, std::move(name), std::move(vars), {}}));
}
Formula Formula::eq(std::string a, std::string b) {
  return Formula(std::make_shared<Node>(Node{Kind::Eq, "", {std::move(a), std::move(b)}, {}}));
}
Formula Formula::neg(Formula f) { return Formula(std::make_shared<Node>(Node{Kind::Not, "", {}, {std::move(f)}})); }
Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Kind::And, "", {}, {std::move(a), std::move(b)}}));
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Kind::Or, "", {}, {std::move(a), std::move(b)}}));
}
Formula Formula::implies(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Kind::Implies, "", {}, {std::move(a), std::move(b)}}));
}
Formula Formula::iff(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Kind::Iff, "", {}, {std::move(a), std::move(b)}}));
}
Formula Formula::exists(std::string var, Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::Exists, std::move(var), {}, {std::move(f)}}));
}
Formula Formula::forall(std::string var, Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::Forall, std::move(var), {}, {std::move(f)}}));
}
Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return truth(true);
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = conj(fs[i], acc);
  return acc;
}
Formula Formula::disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return truth(false);
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = disj(fs[i], acc);
  return acc;
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<std::string>& Formula::vars() const { return node_->vars; }
const Formula& Formula::sub(std::size_t i) const { return node_->kids.at(i); }
std::size_t Formula::arity() const { return node_->kids.size(); }

std::set<std::string> Formula::free_vars() const {
  std::set<std::string> out;
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      break;
    case Kind::Rel:
    case Kind::Eq:
      out.insert(vars().begin(), vars().end());
      break;
    case Kind::Exists:
    case Kind::Forall:
      out = sub(0).free_vars();
      out.erase(name());
      break;
    default:
      for (std::size_t i = 0; i < arity(); ++i) {
        auto s = sub(i).free_vars();
        out.insert(s.begin(), s.end());
      }
  }
  return out;
}

std::size_t Formula::quantifier_depth() const {
  std::size_t d = 0;
  for (std::size_t i = 0; i < arity(); ++i) d = std::max(d, sub(i).quantifier_depth());
  return d + ((kind() == Kind::Exists || kind() == Kind::Forall) ? 1 : 0);
}

std::string fresh_var(std::string_view stem) {
  static std::atomic<unsigned long> counter{0};
  return std::string(stem) + "#" + std::to_string(++counter);
}

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& ren) {
  using K = Formula::Kind;
  auto map_var = [&](const std::string& v) {
    auto it = ren.find(v);
    return it == ren.end() ? v : it->second;
  };
  switch (f.kind()) {
    case K::True:
    case K::False:
      return f;
    case K::Rel: {
      std::vector<std::string> vs;
      for (const auto& v : f.vars()) vs.push_back(map_var(v));
      return Formula::rel(f.name(), vs);
    }
    case K::Eq:
      return Formula::eq(map_var(f.vars()[0]), map_var(f.vars()[1]));
    case K::Not:
      return Formula::neg(rename_free(f.sub(0), ren));
    case K::And:
      return Formula::conj(rename_free(f.sub(0), ren), rename_free(f.sub(1), ren));
    case K::Or:
      return Formula::disj(rename_free(f.sub(0), ren), rename_free(f.sub(1), ren));
    case K::Implies:
      return Formula::implies(rename_free(f.sub(0), ren), rename_free(f.sub(1), ren));
    case K::Iff:
      return Formula::iff(rename_free(f.sub(0), ren), rename_free(f.sub(1), ren));
    case K::Exists:
    case K::Forall: {
      std::map<std::string, std::string> inner = ren;
      inner.erase(f.name());
      std::string bound = f.name();
      bool captures = false;
      for (const auto& [from, to] : inner)
        if (to == bound) captures = true;
      if (captures) {
        std::string fresh = fresh_var(bound.substr(0, bound.find('#')));
        inner[bound] = fresh;
        bound = fresh;
      }
      Formula body = rename_free(f.sub(0), inner);
      return f.kind() == K::Exists ? Formula::exists(bound, body) : Formula::forall(bound, body);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Parser.

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, And, Or, Not, Implies, Iff, Eq, Neq, Lt, Le, Gt, Ge, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex_formula(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t pos = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '#' || s[i] == '\''))
        ++i;
      out.push_back({Tok::Ident, std::string(s.substr(pos, i - pos)), pos});
      continue;
    }
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static const Sym syms[] = {{"<->", Tok::Iff}, {"->", Tok::Implies}, {"<=", Tok::Le}, {">=", Tok::Ge},
                               {"!=", Tok::Neq},  {"(", Tok::LParen},  {")", Tok::RParen}, {",", Tok::Comma},
                               {".", Tok::Dot},   {"&", Tok::And},     {"|", Tok::Or},     {"!", Tok::Not},
                               {"=", Tok::Eq},    {"<", Tok::Lt},      {">", Tok::Gt}};
    bool matched = false;
    for (const auto& sym : syms)
      if (starts(sym.text)) {
        out.push_back({sym.kind, std::string(sym.text), pos});
        i += sym.text.size();
        matched = true;
        break;
      }
    if (!matched) throw SyntaxError(std::string("formula: unexpected character '") + c + "'", pos);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

Formula builtin_macro(const std::string& name, const std::vector<std::string>& args, std::size_t pos) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw SyntaxError("formula: " + name + " takes " + std::to_string(n) + " argument(s)", pos);
  };
  using F = Formula;
  if (name == "root") {
    need(1);
    std::string z = fresh_var("z");
    return F::neg(F::exists(z, F::rel("pare", {z, args[0]})));
  }
  if (name == "nsib") {
    need(2);
    std::string z = fresh_var("z");
    return F::conj(F::rel("sib", {args[0], args[1]}),
                   F::neg(F::exists(z, F::conj(F::rel("sib", {args[0], z}), F::rel("sib", {z, args[1]})))));
  }
  if (name == "first" || name == "last") {
    need(1);
    std::string z = fresh_var("z");
    std::string lo = name == "first" ? args[0] : z, hi = name == "first" ? z : args[0];
    return F::forall(z, F::disj(F::rel("lt", {lo, hi}), F::eq(lo, hi)));
  }
  throw SyntaxError("formula: unknown macro '" + name + "'", pos);
}

bool is_builtin_macro(const std::string& n) { return n == "root" || n == "nsib" || n == "first" || n == "last"; }

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const MacroTable& macros) : toks_(lex_formula(text)), macros_(macros) {}

  Formula parse() {
    Formula f = iff();
    if (peek().kind != Tok::End) throw SyntaxError("formula: trailing input '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw SyntaxError(std::string("formula: expected ") + what, peek().pos);
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) throw SyntaxError(std::string("formula: expected ") + what, peek().pos);
    return next().text;
  }

  Formula iff() {
    Formula f = implication();
    while (peek().kind == Tok::Iff) {
      next();
      f = Formula::iff(f, implication());
    }
    return f;
  }
  Formula implication() {
    Formula f = disjunction();
    if (peek().kind == Tok::Implies) {
      next();
      return Formula::implies(f, implication());
    }
    return f;
  }
  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }
  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::conj(f, unary());
    }
    return f;
  }
  bool at_quantifier() const {
    return peek().kind == Tok::Ident && (peek().text == "E" || peek().text == "A") && peek(1).kind == Tok::Ident &&
           (peek(2).kind == Tok::Dot || peek(2).kind == Tok::Comma);
  }
  Formula unary() {
    if (peek().kind == Tok::Not) {
      next();
      return Formula::neg(unary());
    }
    if (at_quantifier()) {
      bool ex = next().text == "E";
      std::vector<std::string> vs{ident("variable")};
      while (peek().kind == Tok::Comma) {
        next();
        vs.push_back(ident("variable"));
      }
      expect(Tok::Dot, "'.' after quantified variables");
      Formula body = iff();
      for (auto it = vs.rbegin(); it != vs.rend(); ++it)
        body = ex ? Formula::exists(*it, body) : Formula::forall(*it, body);
      return body;
    }
    return atom();
  }
  Formula atom() {
    const Token t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Formula f = iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    std::string name = ident("a formula");
    if (name == "true") return Formula::truth(true);
    if (name == "false") return Formula::truth(false);
    if (peek().kind == Tok::LParen) {
      next();
      std::vector<std::string> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(ident("variable"));
        while (peek().kind == Tok::Comma) {
          next();
          args.push_back(ident("variable"));
        }
      }
      expect(Tok::RParen, "')'");
      if (auto m = macros_.find(name); m != macros_.end()) {
        if (m->second.params.size() != args.size())
          throw SyntaxError("formula: macro '" + name + "' arity mismatch", t.pos);
        std::map<std::string, std::string> ren;
        for (std::size_t j = 0; j < args.size(); ++j) ren[m->second.params[j]] = args[j];
        return rename_free(m->second.body, ren);
      }
      if (is_builtin_macro(name)) return builtin_macro(name, args, t.pos);
      return Formula::rel(name, args);
    }
    // Infix comparisons between variables.
    Tok op = peek().kind;
    if (op == Tok::Eq || op == Tok::Neq || op == Tok::Lt || op == Tok::Le || op == Tok::Gt || op == Tok::Ge) {
      next();
      std::string rhs = ident("variable");
      switch (op) {
        case Tok::Eq:
          return Formula::eq(name, rhs);
        case Tok::Neq:
          return Formula::neg(Formula::eq(name, rhs));
        case Tok::Lt:
          return Formula::rel("lt", {name, rhs});
        case Tok::Gt:
          return Formula::rel("lt", {rhs, name});
        case Tok::Le:
          return Formula::disj(Formula::rel("lt", {name, rhs}), Formula::eq(name, rhs));
        default:
          return Formula::disj(Formula::rel("lt", {rhs, name}), Formula::eq(name, rhs));
      }
    }
    throw SyntaxError("formula: expected a relation, comparison or '(' after '" + name + "'", t.pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const MacroTable& macros_;
};

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Iff:
      return 1;
    case Formula::Kind::Implies:
      return 2;
    case Formula::Kind::Or:
      return 3;
    case Formula::Kind::And:
      return 4;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return 0;
    default:
      return 5;
  }
}

std::string render_at(const Formula& f, int ctx) {
  using K = Formula::Kind;
  std::string s;
  switch (f.kind()) {
    case K::True:
      return "true";
    case K::False:
      return "false";
    case K::Rel:
      s = f.name() + "(";
      for (std::size_t i = 0; i < f.vars().size(); ++i) s += (i ? "," : "") + f.vars()[i];
      return s + ")";
    case K::Eq:
      return f.vars()[0] + "=" + f.vars()[1];
    case K::Not:
      return "!" + render_at(f.sub(0), 5);
    case K::And:
      s = render_at(f.sub(0), 4) + " & " + render_at(f.sub(1), 5);
      break;
    case K::Or:
      s = render_at(f.sub(0), 3) + " | " + render_at(f.sub(1), 4);
      break;
    case K::Implies:
      s = render_at(f.sub(0), 3) + " -> " + render_at(f.sub(1), 2);
      break;
    case K::Iff:
      s = render_at(f.sub(0), 1) + " <-> " + render_at(f.sub(1), 2);
      break;
    case K::Exists:
    case K::Forall:
      s = std::string(f.kind() == K::Exists ? "E " : "A ") + f.name() + ". " + render_at(f.sub(0), 0);
      break;
  }
  return precedence(f) < ctx ? "(" + s + ")" : s;
}

}  // namespace

Formula parse_formula(std::string_view text, const MacroTable& macros) { return FormulaParser(text, macros).parse(); }

std::string render_formula(const Formula& f) { return render_at(f, 0); }

// ---------------------------------------------------------------------------
// Recursive evaluation over a dense index of the structure.

namespace {

class ModelChecker {
 public:
  explicit ModelChecker(const Structure& s) : s_(s), n_(s.universe.size()) {
    for (std::size_t i = 0; i < n_; ++i) dense_[s.universe[i]] = static_cast<int>(i);
    for (const auto& [name, arity] : s.vocab) {
      Rel r;
      r.arity = arity;
      if (arity == 1) r.bits.assign(n_, 0);
      if (arity == 2) r.bits.assign(n_ * n_, 0);
      auto it = s.rels.find(name);
      if (it != s.rels.end())
        for (const auto& t : it->second) {
          Tuple d;
          for (int e : t) d.push_back(dense_.at(e));
          if (arity == 1)
            r.bits[static_cast<std::size_t>(d[0])] = 1;
          else if (arity == 2)
            r.bits[static_cast<std::size_t>(d[0]) * n_ + static_cast<std::size_t>(d[1])] = 1;
          else
            r.tuples.insert(d);
        }
      rel_index_[name] = static_cast<int>(rels_.size());
      rels_.push_back(std::move(r));
    }
  }

  struct Prepared {
    struct Op {
      Formula::Kind kind;
      int rel = -1;
      std::vector<int> slots;  // variable slots for Rel/Eq, bound slot for quantifiers
      std::vector<int> kids;
    };
    std::vector<Op> ops;
    int root = -1;
    std::size_t slots = 0;
  };

  Prepared prepare(const Formula& f, const std::vector<std::string>& params) const {
    Prepared p;
    std::map<std::string, std::vector<int>> scope;
    for (const auto& v : params) {
      scope[v].push_back(static_cast<int>(p.slots++));
    }
    p.root = compile(f, p, scope);
    return p;
  }

  // args are dense indices for the params.
  bool check(const Prepared& p, const std::vector<int>& args) const {
    std::vector<int> env(p.slots, -1);
    for (std::size_t i = 0; i < args.size(); ++i) env[i] = args[i];
    return run(p, p.root, env);
  }

  int dense(int id) const {
    auto it = dense_.find(id);
    if (it == dense_.end()) throw EvalError("element " + std::to_string(id) + " is not in the universe");
    return it->second;
  }
  std::size_t size() const { return n_; }

 private:
  struct Rel {
    int arity = 0;
    std::vector<char> bits;
    std::set<Tuple> tuples;
  };

  int compile(const Formula& f, Prepared& p, std::map<std::string, std::vector<int>>& scope) const {
    using K = Formula::Kind;
    Prepared::Op op{f.kind(), -1, {}, {}};
    auto slot_of = [&](const std::string& v) {
      auto it = scope.find(v);
      if (it == scope.end() || it->second.empty()) throw EvalError("unbound variable '" + v + "'");
      return it->second.back();
    };
    switch (f.kind()) {
      case K::Rel: {
        auto it = rel_index_.find(f.name());
        if (it == rel_index_.end()) throw EvalError("relation '" + f.name() + "' is not in the vocabulary");
        if (rels_[static_cast<std::size_t>(it->second)].arity != static_cast<int>(f.vars().size()))
          throw EvalError("relation '" + f.name() + "' used with the wrong arity");
        op.rel = it->second;
        for (const auto& v : f.vars()) op.slots.push_back(slot_of(v));
        break;
      }
      case K::Eq:
        for (const auto& v : f.vars()) op.slots.push_back(slot_of(v));
        break;
      case K::Exists:
      case K::Forall: {
        int s = static_cast<int>(p.slots++);
        op.slots.push_back(s);
        scope[f.name()].push_back(s);
        op.kids.push_back(compile(f.sub(0), p, scope));
        scope[f.name()].pop_back();
        break;
      }
      default:
        for (std::size_t i = 0; i < f.arity(); ++i) op.kids.push_back(compile(f.sub(i), p, scope));
    }
    p.ops.push_back(std::move(op));
    return static_cast<int>(p.ops.size() - 1);
  }

  bool run(const Prepared& p, int idx, std::vector<int>& env) const {
    using K = Formula::Kind;
    const auto& op = p.ops[static_cast<std::size_t>(idx)];
    switch (op.kind) {
      case K::True:
        return true;
      case K::False:
        return false;
      case K::Rel: {
        const Rel& r = rels_[static_cast<std::size_t>(op.rel)];
        if (r.arity == 1) return r.bits[static_cast<std::size_t>(env[static_cast<std::size_t>(op.slots[0])])];
        if (r.arity == 2)
          return r.bits[static_cast<std::size_t>(env[static_cast<std::size_t>(op.slots[0])]) * n_ +
                        static_cast<std::size_t>(env[static_cast<std::size_t>(op.slots[1])])];
        Tuple t;
        for (int s : op.slots) t.push_back(env[static_cast<std::size_t>(s)]);
        return r.tuples.count(t) > 0;
      }
      case K::Eq:
        return env[static_cast<std::size_t>(op.slots[0])] == env[static_cast<std::size_t>(op.slots[1])];
      case K::Not:
        return !run(p, op.kids[0], env);
      case K::And:
        return run(p, op.kids[0], env) && run(p, op.kids[1], env);
      case K::Or:
        return run(p, op.kids[0], env) || run(p, op.kids[1], env);
      case K::Implies:
        return !run(p, op.kids[0], env) || run(p, op.kids[1], env);
      case K::Iff:
        return run(p, op.kids[0], env) == run(p, op.kids[1], env);
      case K::Exists:
      case K::Forall: {
        const bool ex = op.kind == K::Exists;
        const auto slot = static_cast<std::size_t>(op.slots[0]);
        int saved = env[slot];
        bool result = !ex;
        for (std::size_t e = 0; e < n_; ++e) {
          env[slot] = static_cast<int>(e);
          if (run(p, op.kids[0], env) == ex) {
            result = ex;
            break;
          }
        }
        env[slot] = saved;
        return result;
      }
    }
    return false;
  }

  const Structure& s_;
  std::size_t n_;
  std::map<int, int> dense_;
  std::map<std::string, int> rel_index_;
  std::vector<Rel> rels_;
};

}  // namespace

bool eval_formula(const Structure& s, const Formula& f, const Assignment& asg) {
  ModelChecker mc(s);
  std::vector<std::string> params;
  std::vector<int> args;
  for (const auto& [v, e] : asg) {
    params.push_back(v);
    args.push_back(mc.dense(e));
  }
  return mc.check(mc.prepare(f, params), args);
}

// ---------------------------------------------------------------------------
// Bottom-up relational evaluation.

namespace {

struct Table {
  std::vector<std::string> cols;  // sorted
  std::set<Tuple> rows;
};

class TableEval {
 public:
  explicit TableEval(const Structure& s) : s_(s) {}

  Table run(const Formula& f) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True:
        return {{}, {Tuple{}}};
      case K::False:
        return {{}, {}};
      case K::Rel: {
        auto a = s_.vocab.find(f.name());
        if (a == s_.vocab.end()) throw EvalError("relation '" + f.name() + "' is not in the vocabulary");
        if (a->second != static_cast<int>(f.vars().size()))
          throw EvalError("relation '" + f.name() + "' used with the wrong arity");
        Table t;
        t.cols = sorted_unique(f.vars());
        auto it = s_.rels.find(f.name());
        if (it == s_.rels.end()) return t;
        for (const auto& tup : it->second) {
          std::map<std::string, int> asg;
          bool ok = true;
          for (std::size_t i = 0; i < tup.size() && ok; ++i) {
            auto [pos, fresh] = asg.emplace(f.vars()[i], tup[i]);
            if (!fresh && pos->second != tup[i]) ok = false;
          }
          if (!ok) continue;
          Tuple row;
          for (const auto& c : t.cols) row.push_back(asg.at(c));
          t.rows.insert(row);
        }
        return t;
      }
      case K::Eq: {
        Table t;
        t.cols = sorted_unique(f.vars());
        for (int e : s_.universe) t.rows.insert(t.cols.size() == 1 ? Tuple{e} : Tuple{e, e});
        return t;
      }
      case K::Not:
        return complement(run(f.sub(0)));
      case K::And:
        return join(run(f.sub(0)), run(f.sub(1)));
      case K::Or:
        return unite(run(f.sub(0)), run(f.sub(1)));
      case K::Implies:
        return unite(complement(run(f.sub(0))), run(f.sub(1)));
      case K::Iff: {
        Table a = run(f.sub(0)), b = run(f.sub(1));
        return unite(join(a, b), join(complement(a), complement(b)));
      }
      case K::Exists:
        return project_out(run(f.sub(0)), f.name());
      case K::Forall:
        return complement(project_out(complement(run(f.sub(0))), f.name()));
    }
    return {};
  }

  // Extends a table to the given (sorted) columns with every value.
  Table extend(const Table& t, const std::vector<std::string>& cols) const {
    Table out;
    out.cols = cols;
    std::vector<int> src(cols.size(), -1);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      auto it = std::find(t.cols.begin(), t.cols.end(), cols[i]);
      if (it != t.cols.end()) src[i] = static_cast<int>(it - t.cols.begin());
    }
    for (const auto& row : t.rows) {
      Tuple cur(cols.size());
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == cols.size()) {
          out.rows.insert(cur);
          return;
        }
        if (src[i] >= 0) {
          cur[i] = row[static_cast<std::size_t>(src[i])];
          go(i + 1);
          return;
        }
        for (int e : s_.universe) {
          cur[i] = e;
          go(i + 1);
        }
      };
      go(0);
    }
    return out;
  }

 private:
  static std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
  static std::vector<std::string> merge_cols(const Table& a, const Table& b) {
    std::vector<std::string> c = a.cols;
    c.insert(c.end(), b.cols.begin(), b.cols.end());
    return sorted_unique(c);
  }
  Table complement(const Table& t) const {
    Table all;
    all.cols = t.cols;
    Table unit{{}, {Tuple{}}};
    all = extend(unit, t.cols);
    Table out;
    out.cols = t.cols;
    std::set_difference(all.rows.begin(), all.rows.end(), t.rows.begin(), t.rows.end(),
                        std::inserter(out.rows, out.rows.end()));
    return out;
  }
  Table join(const Table& a, const Table& b) const {
    std::vector<std::string> cols = merge_cols(a, b);
    Table ea = extend(a, cols), eb = extend(b, cols);
    Table out;
    out.cols = cols;
    std::set_intersection(ea.rows.begin(), ea.rows.end(), eb.rows.begin(), eb.rows.end(),
                          std::inserter(out.rows, out.rows.end()));
    return out;
  }
  Table unite(const Table& a, const Table& b) const {
    std::vector<std::string> cols = merge_cols(a, b);
    Table ea = extend(a, cols), eb = extend(b, cols);
    ea.rows.insert(eb.rows.begin(), eb.rows.end());
    return ea;
  }
  static Table project_out(const Table& t, const std::string& v) {
    auto it = std::find(t.cols.begin(), t.cols.end(), v);
    if (it == t.cols.end()) return t;
    std::size_t k = static_cast<std::size_t>(it - t.cols.begin());
    Table out;
    out.cols = t.cols;
    out.cols.erase(out.cols.begin() + static_cast<std::ptrdiff_t>(k));
    for (auto row : t.rows) {
      row.erase(row.begin() + static_cast<std::ptrdiff_t>(k));
      out.rows.insert(row);
    }
    return out;
  }

  const Structure& s_;
};

}  // namespace

std::set<Tuple> satisfying_table(const Structure& s, const Formula& f, const std::vector<std::string>& vars) {
  for (const auto& v : f.free_vars())
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) throw EvalError("unbound variable '" + v + "'");
  TableEval te(s);
  std::vector<std::string> cols(vars);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  Table t = te.extend(te.run(f), cols);
  std::set<Tuple> out;
  for (const auto& row : t.rows) {
    Tuple r;
    bool ok = true;
    std::map<std::string, int> asg;
    for (std::size_t i = 0; i < cols.size(); ++i) asg[cols[i]] = row[i];
    for (const auto& v : vars) r.push_back(asg.at(v));
    if (ok) out.insert(r);
  }
  return out;
}

bool eval_formula_table(const Structure& s, const Formula& f, const Assignment& asg) {
  std::vector<std::string> vars;
  Tuple row;
  for (const auto& [v, e] : asg) {
    vars.push_back(v);
    row.push_back(e);
  }
  return satisfying_table(s, f, vars).count(row) > 0;
}

// ---------------------------------------------------------------------------
// Copying and interpretations.

Structure copy_k(const Structure& s, std::size_t k) {
  if (k < 1) throw EvalError("copying needs k >= 1");
  if (s.vocab.count(kCopyPredicate)) throw EvalError("structure already has a copy predicate");
  const int n = static_cast<int>(s.universe.size());
  std::map<int, int> index;
  for (int i = 0; i < n; ++i) index[s.universe[static_cast<std::size_t>(i)]] = i;
  Structure out;
  out.vocab = s.vocab;
  out.vocab[kCopyPredicate] = static_cast<int>(k);
  for (std::size_t c = 0; c < k; ++c)
    for (int i = 0; i < n; ++i) out.universe.push_back(static_cast<int>(c) * n + i);
  for (const auto& [name, tuples] : s.rels) {
    auto& dst = out.rels[name];
    for (std::size_t c = 0; c < k; ++c)
      for (const auto& t : tuples) {
        Tuple u;
        for (int e : t) u.push_back(static_cast<int>(c) * n + index.at(e));
        dst.insert(u);
      }
  }
  auto& cp = out.rels[kCopyPredicate];
  for (int i = 0; i < n; ++i) {
    Tuple t;
    for (std::size_t c = 0; c < k; ++c) t.push_back(static_cast<int>(c) * n + i);
    cp.insert(t);
  }
  return out;
}

std::vector<std::string> relation_params(std::size_t arity) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arity; ++i) out.push_back(i == 0 ? "x" : i == 1 ? "y" : "x" + std::to_string(i + 1));
  return out;
}

namespace {

void check_formula_vocab(const Formula& f, const Vocabulary& v, const std::string& where) {
  using K = Formula::Kind;
  if (f.kind() == K::Rel) {
    auto it = v.find(f.name());
    if (it == v.end()) throw TypeError(where + ": relation '" + f.name() + "' is not in the input vocabulary");
    if (it->second != static_cast<int>(f.vars().size()))
      throw TypeError(where + ": relation '" + f.name() + "' used with the wrong arity");
  }
  for (std::size_t i = 0; i < f.arity(); ++i) check_formula_vocab(f.sub(i), v, where);
}

void check_free(const Formula& f, std::size_t arity, const std::string& where) {
  auto params = relation_params(arity);
  for (const auto& v : f.free_vars())
    if (std::find(params.begin(), params.end(), v) == params.end())
      throw TypeError(where + ": free variable '" + v + "' is not a parameter");
}

// Calls fn on every tuple drawn from the given candidate lists.
void for_each_tuple(const std::vector<const std::vector<int>*>& pools, const std::function<void(const Tuple&)>& fn) {
  Tuple cur(pools.size());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == pools.size()) {
      fn(cur);
      return;
    }
    for (int e : *pools[i]) {
      cur[i] = e;
      go(i + 1);
    }
  };
  go(0);
}

}  // namespace

Structure apply_interpretation(const Interpretation1D& in, const Structure& s) {
  for (const auto& [name, arity] : in.input)
    if (!s.vocab.count(name) || s.vocab.at(name) != arity)
      throw TypeError("interpretation: structure lacks input relation '" + name + "'");
  ModelChecker mc(s);
  Structure out;
  out.vocab = in.output;
  auto uni = mc.prepare(in.universe, {"x"});
  std::vector<int> dense_sel;
  for (int e : s.universe) {
    int d = mc.dense(e);
    if (mc.check(uni, {d})) {
      out.universe.push_back(e);
      dense_sel.push_back(d);
    }
  }
  for (const auto& [name, arity] : in.output) {
    auto& dst = out.rels[name];
    auto it = in.relations.find(name);
    if (it == in.relations.end()) continue;
    auto prep = mc.prepare(it->second, relation_params(static_cast<std::size_t>(arity)));
    std::vector<const std::vector<int>*> pools(static_cast<std::size_t>(arity), &dense_sel);
    for_each_tuple(pools, [&](const Tuple& t) {
      if (!mc.check(prep, t)) return;
      Tuple ids;
      for (int d : t) ids.push_back(s.universe[static_cast<std::size_t>(d)]);
      dst.insert(ids);
    });
  }
  return out;
}

void validate_transduction(const FOTransduction& t) {
  if (t.copies < 1) throw TypeError("transduction: needs at least one copy");
  if (t.universe.size() != t.copies) throw TypeError("transduction: one universe formula per copy");
  for (std::size_t c = 0; c < t.copies; ++c) {
    check_formula_vocab(t.universe[c], t.input, "universe formula");
    check_free(t.universe[c], 1, "universe formula");
  }
  for (const auto& [name, per] : t.relations) {
    auto a = t.output.find(name);
    if (a == t.output.end()) throw TypeError("transduction: relation '" + name + "' is not in the output vocabulary");
    for (const auto& [cs, f] : per) {
      if (static_cast<int>(cs.size()) != a->second) throw TypeError("transduction: copy tuple arity for '" + name + "'");
      for (int c : cs)
        if (c < 0 || static_cast<std::size_t>(c) >= t.copies) throw TypeError("transduction: copy index out of range");
      check_formula_vocab(f, t.input, "formula for " + name);
      check_free(f, cs.size(), "formula for " + name);
    }
  }
}

Structure apply_transduction(const FOTransduction& t, const Structure& s) {
  validate_transduction(t);
  for (const auto& [name, arity] : t.input)
    if (!s.vocab.count(name) || s.vocab.at(name) != arity)
      throw TypeError("transduction '" + t.name + "': structure lacks input relation '" + name + "'");
  ModelChecker mc(s);
  const int n = static_cast<int>(s.universe.size());
  Structure out;
  out.vocab = t.output;
  std::vector<std::vector<int>> selected(t.copies);  // dense indices per copy
  for (std::size_t c = 0; c < t.copies; ++c) {
    auto prep = mc.prepare(t.universe[c], {"x"});
    for (int i = 0; i < n; ++i)
      if (mc.check(prep, {i})) selected[c].push_back(i);
  }
  for (std::size_t c = 0; c < t.copies; ++c)
    for (int i : selected[c]) out.universe.push_back(static_cast<int>(c) * n + i);
  std::sort(out.universe.begin(), out.universe.end());
  for (const auto& [name, arity] : t.output) {
    auto& dst = out.rels[name];
    auto it = t.relations.find(name);
    if (it == t.relations.end()) continue;
    for (const auto& [cs, f] : it->second) {
      auto prep = mc.prepare(f, relation_params(cs.size()));
      std::vector<const std::vector<int>*> pools;
      for (int c : cs) pools.push_back(&selected[static_cast<std::size_t>(c)]);
      for_each_tuple(pools, [&](const Tuple& tup) {
        if (!mc.check(prep, tup)) return;
        Tuple ids;
        for (std::size_t j = 0; j < tup.size(); ++j) ids.push_back(cs[j] * n + tup[j]);
        dst.insert(ids);
      });
    }
  }
  return out;
}

namespace {

// copy(z_1, ..., z_k) with the given positions fixed and the rest quantified.
Formula copy_atom(std::size_t k, const std::map<std::size_t, std::string>& fixed) {
  std::vector<std::string> args;
  std::vector<std::string> bound;
  for (std::size_t i = 0; i < k; ++i) {
    auto it = fixed.find(i);
    if (it != fixed.end()) {
      args.push_back(it->second);
    } else {
      args.push_back(fresh_var("c"));
      bound.push_back(args.back());
    }
  }
  Formula f = Formula::rel(kCopyPredicate, args);
  for (auto it = bound.rbegin(); it != bound.rend(); ++it) f = Formula::exists(*it, f);
  return f;
}

Formula relativise(const Formula& f, std::size_t k) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Exists:
      return Formula::exists(f.name(), Formula::conj(copy_atom(k, {{0, f.name()}}), relativise(f.sub(0), k)));
    case K::Forall:
      return Formula::forall(f.name(), Formula::implies(copy_atom(k, {{0, f.name()}}), relativise(f.sub(0), k)));
    case K::Not:
      return Formula::neg(relativise(f.sub(0), k));
    case K::And:
      return Formula::conj(relativise(f.sub(0), k), relativise(f.sub(1), k));
    case K::Or:
      return Formula::disj(relativise(f.sub(0), k), relativise(f.sub(1), k));
    case K::Implies:
      return Formula::implies(relativise(f.sub(0), k), relativise(f.sub(1), k));
    case K::Iff:
      return Formula::iff(relativise(f.sub(0), k), relativise(f.sub(1), k));
    default:
      return f;
  }
}

// The copy-indexed formula f over params, read in the copied structure.
Formula lift(const Formula& f, const std::vector<int>& cs, std::size_t k) {
  auto params = relation_params(cs.size());
  std::vector<Formula> parts;
  std::map<std::string, std::string> ren;
  std::vector<std::string> origins;
  for (std::size_t j = 0; j < cs.size(); ++j) {
    std::string o = fresh_var("o");
    origins.push_back(o);
    ren[params[j]] = o;
    auto c = static_cast<std::size_t>(cs[j]);
    if (c == 0)
      parts.push_back(Formula::conj(Formula::eq(o, params[j]), copy_atom(k, {{0, params[j]}})));
    else
      parts.push_back(copy_atom(k, {{0, o}, {c, params[j]}}));
  }
  parts.push_back(rename_free(relativise(f, k), ren));
  Formula body = Formula::conj_all(parts);
  for (auto it = origins.rbegin(); it != origins.rend(); ++it) body = Formula::exists(*it, body);
  return body;
}

}  // namespace

Interpretation1D to_interpretation(const FOTransduction& t) {
  validate_transduction(t);
  Interpretation1D in;
  in.input = t.input;
  in.input[kCopyPredicate] = static_cast<int>(t.copies);
  in.output = t.output;
  std::vector<Formula> uni;
  for (std::size_t c = 0; c < t.copies; ++c) uni.push_back(lift(t.universe[c], {static_cast<int>(c)}, t.copies));
  in.universe = Formula::disj_all(uni);
  for (const auto& [name, per] : t.relations) {
    std::vector<Formula> alts;
    for (const auto& [cs, f] : per) alts.push_back(lift(f, cs, t.copies));
    in.relations[name] = Formula::disj_all(alts);
  }
  return in;
}

std::optional<std::string> audit_transduction(const FOTransduction& t, const Structure& in, const Structure& out) {
  const int n = static_cast<int>(in.universe.size());
  const int total = n * static_cast<int>(t.copies);
  for (int e : out.universe) {
    if (e < 0 || e >= total) return "output element " + std::to_string(e) + " is outside the copied universe";
    int c = e / n, i = e % n;
    if (!eval_formula(in, t.universe[static_cast<std::size_t>(c)], {{"x", in.universe[static_cast<std::size_t>(i)]}}))
      return "output element " + std::to_string(e) + " fails its universe formula";
  }
  for (const auto& [name, tuples] : out.rels) {
    auto per = t.relations.find(name);
    for (const auto& tup : tuples) {
      std::vector<int> cs;
      Assignment asg;
      auto params = relation_params(tup.size());
      for (std::size_t j = 0; j < tup.size(); ++j) {
        if (!std::binary_search(out.universe.begin(), out.universe.end(), tup[j]))
          return "tuple in " + name + " leaves the output universe";
        cs.push_back(tup[j] / n);
        asg[params[j]] = in.universe[static_cast<std::size_t>(tup[j] % n)];
      }
      if (per == t.relations.end() || !per->second.count(cs)) return "tuple in " + name + " has no formula";
      if (!eval_formula(in, per->second.at(cs), asg)) return "tuple in " + name + " fails its formula";
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text formats.

namespace {

constexpr const char* kStructureHeader = "listfn-structure 1";
constexpr const char* kFotHeader = "listfn-fot 1";

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int to_int(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SyntaxError("line " + std::to_string(line) + ": expected an integer, got '" + s + "'", 0);
  }
}

std::string render_vocab(const Vocabulary& v) {
  std::string s;
  for (const auto& [name, arity] : v) s += (s.empty() ? "" : " ") + name + "/" + std::to_string(arity);
  return s;
}

Vocabulary parse_vocab(const std::vector<std::string>& words, std::size_t line) {
  Vocabulary v;
  for (const auto& w : words) {
    auto slash = w.rfind('/');
    if (slash == std::string::npos) throw SyntaxError("line " + std::to_string(line) + ": expected name/arity", 0);
    v[w.substr(0, slash)] = to_int(w.substr(slash + 1), line);
  }
  return v;
}

}  // namespace

std::string render_structure(const Structure& s) {
  std::ostringstream out;
  out << kStructureHeader << "\nuniverse";
  for (int e : s.universe) out << " " << e;
  out << "\n";
  for (const auto& [name, arity] : s.vocab) {
    out << "relation " << name << " " << arity << " :";
    auto it = s.rels.find(name);
    bool first = true;
    if (it != s.rels.end())
      for (const auto& t : it->second) {
        out << (first ? " " : " | ");
        for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
        first = false;
      }
    out << "\n";
  }
  return out.str();
}

Structure parse_structure(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kStructureHeader) throw SyntaxError("missing structure header", 0);
  Structure s;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto ws = split_ws(line);
    if (ws.empty() || ws[0][0] == ';') continue;
    if (ws[0] == "universe") {
      for (std::size_t i = 1; i < ws.size(); ++i) s.universe.push_back(to_int(ws[i], lineno));
      std::sort(s.universe.begin(), s.universe.end());
    } else if (ws[0] == "relation" && ws.size() >= 4 && ws[3] == ":") {
      const std::string& name = ws[1];
      int arity = to_int(ws[2], lineno);
      s.vocab[name] = arity;
      auto& dst = s.rels[name];
      Tuple cur;
      for (std::size_t i = 4; i <= ws.size(); ++i) {
        if (i == ws.size() || ws[i] == "|") {
          if (!cur.empty() || (i < ws.size())) {
            if (static_cast<int>(cur.size()) != arity)
              throw SyntaxError("line " + std::to_string(lineno) + ": tuple of wrong arity", 0);
            dst.insert(cur);
          }
          cur.clear();
          continue;
        }
        cur.push_back(to_int(ws[i], lineno));
      }
    } else {
      throw SyntaxError("line " + std::to_string(lineno) + ": unrecognised structure line", 0);
    }
  }
  s.validate();
  return s;
}

std::string render_transduction(const FOTransduction& t) {
  std::ostringstream out;
  out << kFotHeader << "\n";
  out << "name " << t.name << "\n";
  out << "copies " << t.copies << "\n";
  out << "input " << render_vocab(t.input) << "\n";
  out << "output " << render_vocab(t.output) << "\n";
  for (std::size_t c = 0; c < t.universe.size(); ++c)
    out << "universe " << c + 1 << " : " << render_formula(t.universe[c]) << "\n";
  for (const auto& [name, per] : t.relations)
    for (const auto& [cs, f] : per) {
      out << "relation " << name;
      for (int c : cs) out << " " << c + 1;
      out << " : " << render_formula(f) << "\n";
    }
  return out.str();
}

FOTransduction parse_transduction(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kFotHeader) throw SyntaxError("missing transduction header", 0);
  FOTransduction t;
  std::map<std::size_t, Formula> uni;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto colon = line.find(" : ");
    auto ws = split_ws(line.substr(0, colon));
    if (ws.empty() || ws[0][0] == ';') continue;
    std::vector<std::string> rest(ws.begin() + 1, ws.end());
    if (ws[0] == "name" && rest.size() == 1) {
      t.name = rest[0];
    } else if (ws[0] == "copies" && rest.size() == 1) {
      t.copies = static_cast<std::size_t>(to_int(rest[0], lineno));
    } else if (ws[0] == "input") {
      t.input = parse_vocab(rest, lineno);
    } else if (ws[0] == "output") {
      t.output = parse_vocab(rest, lineno);
    } else if ((ws[0] == "universe" || ws[0] == "relation") && colon != std::string::npos) {
      Formula f = parse_formula(line.substr(colon + 3));
      if (ws[0] == "universe") {
        if (rest.size() != 1) throw SyntaxError("line " + std::to_string(lineno) + ": universe takes one copy", 0);
        uni.emplace(static_cast<std::size_t>(to_int(rest[0], lineno) - 1), f);
      } else {
        if (rest.empty()) throw SyntaxError("line " + std::to_string(lineno) + ": relation needs a name", 0);
        std::vector<int> cs;
        for (std::size_t i = 1; i < rest.size(); ++i) cs.push_back(to_int(rest[i], lineno) - 1);
        t.relations[rest[0]][cs] = f;
      }
    } else {
      throw SyntaxError("line " + std::to_string(lineno) + ": unrecognised transduction line", 0);
    }
  }
  for (std::size_t c = 0; c < t.copies; ++c) {
    auto it = uni.find(c);
    t.universe.push_back(it == uni.end() ? Formula::truth(false) : it->second);
  }
  validate_transduction(t);
  return t;
}

}  // namespace listfn
