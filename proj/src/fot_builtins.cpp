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

#include <algorithm>

#include "listfn/error.hpp"
#include "listfn/logic.hpp"

namespace listfn {

namespace {

using F = Formula;
using PredMap = std::map<std::string, std::vector<Formula>>;

Path ext(Path p, int i) {
  p.push_back(i);
  return p;
}

Formula ty(const Path& p, const std::string& var = "x") { return F::rel(type_predicate_name(p), {var}); }

Formula atom_pred(const Type& in, const Path& ip, const std::string& name) {
  if (in.arity() == 0) return ty(ip);
  int idx = in.name_index(name);
  if (idx < 0) throw TypeError("no atom '" + name + "' in " + render_type(in));
  return ty(ext(ip, idx));
}

// Output type predicates below `op` read off input predicates below `ip`,
// for nodes that keep their value; finite sets are matched by name.
void map_preds(const Type& out, const Path& op, const Type& in, const Path& ip, const Formula& guard, PredMap& acc) {
  if (out.is_atoms()) {
    std::vector<Formula> alts;
    for (const auto& n : out.names()) alts.push_back(atom_pred(in, ip, n));
    acc[type_predicate_name(op)].push_back(F::conj(F::disj_all(alts), guard));
    for (std::size_t j = 0; j < out.arity(); ++j)
      acc[type_predicate_name(ext(op, static_cast<int>(j)))].push_back(
          F::conj(atom_pred(in, ip, out.child(j).names()[0]), guard));
    return;
  }
  if (out.kind() != in.kind()) throw TypeError("type shapes differ: " + render_type(out) + " vs " + render_type(in));
  acc[type_predicate_name(op)].push_back(F::conj(ty(ip), guard));
  for (std::size_t i = 0; i < out.arity(); ++i)
    map_preds(out.child(i), ext(op, static_cast<int>(i)), in.child(i), ext(ip, static_cast<int>(i)), guard, acc);
}

void add_macro(MacroTable& m, const std::string& name, std::vector<std::string> params, const std::string& body) {
  m[name] = FormulaMacro{std::move(params), parse_formula(body, m)};
}

MacroTable tree_macros() {
  MacroTable m;
  add_macro(m, "rc", {"v"}, "E r. (root(r) & pare(r, v))");
  add_macro(m, "fc", {"v"}, "rc(v) & !E z. sib(z, v)");
  return m;
}

struct Builder {
  FOTransduction t;
  MacroTable macros = tree_macros();

  Builder(std::string name, std::size_t copies, const Type& in, const Type& out) {
    t.name = std::move(name);
    t.copies = copies;
    t.input = encoding_vocabulary(in);
    t.output = encoding_vocabulary(out);
    t.universe.assign(copies, F::truth(false));
  }
  Formula parse(const std::string& s) const { return parse_formula(s, macros); }
  void universe(int c, const std::string& s) { t.universe[static_cast<std::size_t>(c)] = parse(s); }
  void rel(const std::string& r, std::vector<int> cs, const std::string& s) { t.relations[r][std::move(cs)] = parse(s); }
  void rel(const std::string& r, std::vector<int> cs, const Formula& f) { t.relations[r][std::move(cs)] = f; }
  void preds(int c, const PredMap& pm) {
    for (const auto& [name, alts] : pm) {
      if (!t.output.count(name)) throw TypeError("internal: unknown output predicate " + name);
      auto& slot = t.relations[name][{c}];
      std::vector<Formula> all = alts;
      if (t.relations[name].count({c}) && slot.kind() != Formula::Kind::False) all.insert(all.begin(), slot);
      slot = F::disj_all(all);
    }
  }
};

// x lies in the subtree rooted at c, looking at most `depth` levels up.
Formula descendant_or_self(const std::string& c, const std::string& x, std::size_t depth) {
  if (depth == 0) return F::eq(c, x);
  std::string z = fresh_var("u");
  return F::disj(F::eq(c, x), F::exists(z, F::conj(F::rel("pare", {z, x}), descendant_or_self(c, z, depth - 1))));
}

FOTransduction fot_reverse(const Type& s) {
  Term term = Term::reverse(s);
  const Type in = term.dom(), out = term.cod();
  Builder b("reverse", 1, in, out);
  b.universe(0, "true");
  b.rel("pare", {0, 0}, "pare(x, y)");
  // Only the children of the root change order.
  b.rel("sib", {0, 0}, "(rc(x) & sib(y, x)) | (!rc(x) & sib(x, y))");
  PredMap pm;
  map_preds(out, {}, in, {}, F::truth(true), pm);
  b.preds(0, pm);
  return b.t;
}

FOTransduction fot_append(const Type& s) {
  Term term = Term::append(s);
  const Type in = term.dom(), out = term.cod();
  Builder b("append", 1, in, out);
  add_macro(b.macros, "second", {"v"}, "rc(v) & E z. nsib(z, v)");
  // Every node except the second child of the root.
  b.universe(0, "!E p. (pare(p, x) & root(p) & !E z. nsib(x, z))");
  // The last disjunct's "has a previous sibling" test is read on z1, the
  // second child of the root, whose children move up to the root.
  b.rel("pare", {0, 0},
        "(!root(x) & pare(x, y)) | (root(x) & pare(x, y) & !E z. nsib(z, y)) | "
        "(root(x) & E z1. (pare(x, z1) & (E z2. nsib(z2, z1)) & pare(z1, y)))");
  b.rel("sib", {0, 0}, "sib(x, y) | (fc(x) & E z1. (second(z1) & pare(z1, y)))");
  PredMap pm;
  pm[type_predicate_name({})].push_back(b.parse("root(x)"));
  map_preds(out.elem(), {0}, in.left(), {0}, F::truth(true), pm);
  map_preds(out.elem(), {0}, in.right().elem(), {1, 0}, F::truth(true), pm);
  b.preds(0, pm);
  return b.t;
}

FOTransduction fot_coappend(const Type& s) {
  Term term = Term::coappend(s);
  const Type in = term.dom(), out = term.cod();
  Builder b("coappend", 2, in, out);
  b.macros["infirst"] = FormulaMacro{
      {"v"}, F::exists("c", F::conj(b.parse("fc(c)"), descendant_or_self("c", "v", type_depth(s) + 1)))};
  b.universe(0, "true");
  // The second child of the root, or the only child of a singleton, stands
  // for the tail list.
  b.universe(1,
             "(E p. (root(p) & pare(p, x) & E z. (pare(p, z) & nsib(z, x) & !E z2. nsib(z2, z)))) | "
             "(rc(x) & !(E z. sib(z, x)) & !(E z. sib(x, z)))");
  b.rel("pare", {0, 0}, "(root(x) & pare(x, y) & !E z. (nsib(z, y) & pare(x, z))) | (!root(x) & pare(x, y))");
  b.rel("pare", {1, 1}, "false");
  b.rel("pare", {0, 1}, "root(x)");
  b.rel("pare", {1, 0}, "E z. (root(z) & pare(z, y) & E z1. (pare(z, z1) & nsib(z1, y)))");
  b.rel("sib", {0, 0}, "sib(x, y) & !fc(x)");
  b.rel("sib", {0, 1}, "fc(x)");
  const Type& pr = out.left();  // s x s*
  PredMap pm1;
  pm1[type_predicate_name({})].push_back(b.parse("root(x)"));
  pm1[type_predicate_name({0})].push_back(b.parse("root(x) & E z. pare(x, z)"));
  pm1[type_predicate_name({1})].push_back(b.parse("root(x) & !E z. pare(x, z)"));
  map_preds(pr.left(), {0, 0}, in.elem(), {0}, b.parse("infirst(x)"), pm1);
  map_preds(pr.right().elem(), {0, 1, 0}, in.elem(), {0}, b.parse("!infirst(x)"), pm1);
  b.preds(0, pm1);
  PredMap pm2;
  pm2[type_predicate_name({0, 1})].push_back(F::truth(true));
  b.preds(1, pm2);
  return b.t;
}

FOTransduction fot_flat(const Type& s) {
  Term term = Term::flat(s);
  const Type in = term.dom(), out = term.cod();
  Builder b("flat", 1, in, out);
  b.universe(0, "(E p. (pare(p, x) & !root(p))) | root(x)");
  b.rel("pare", {0, 0}, "(!root(x) & pare(x, y)) | (root(x) & E z1. (pare(x, z1) & pare(z1, y)))");
  b.rel("sib", {0, 0}, "sib(x, y) | E p. E q. (rc(p) & rc(q) & pare(p, x) & pare(q, y) & sib(p, q))");
  PredMap pm;
  pm[type_predicate_name({})].push_back(b.parse("root(x)"));
  map_preds(out.elem(), {0}, in.elem().elem(), {0, 0}, F::truth(true), pm);
  b.preds(0, pm);
  return b.t;
}

FOTransduction fot_block(const Type& s, const Type& g) {
  Term term = Term::block(s, g);
  const Type in = term.dom(), out = term.cod();
  const Type el = in.elem();
  Builder b("block", 2, in, out);
  // Summand predicates: one type node each, or the atoms of each side when
  // the two finite sets merged into one.
  const bool merged = el.kind() != Type::Kind::Sum;
  auto summand = [&](const Type& side, int idx) {
    if (!merged) return ty({0, idx}, "v");
    std::vector<Formula> alts;
    for (const auto& n : side.names()) alts.push_back(rename_free(atom_pred(el, {0}, n), {{"x", "v"}}));
    return F::disj_all(alts);
  };
  b.macros["T1"] = FormulaMacro{{"v"}, summand(s, 0)};
  b.macros["T2"] = FormulaMacro{{"v"}, summand(g, 1)};
  add_macro(b.macros, "same", {"a", "c"}, "(T1(a) <-> T1(c)) & (T2(a) <-> T2(c))");
  b.universe(0, "true");
  // Root children that end a block: the next sibling, if any, has the other
  // summand type.
  b.universe(1, "(E z. (pare(z, x) & root(z))) & A y. (nsib(x, y) -> ((T1(x) -> !T1(y)) & (T2(x) -> !T2(y))))");
  b.rel("pare", {0, 0}, "!root(x) & pare(x, y)");
  b.rel("pare", {1, 1}, "false");
  b.rel("pare", {0, 1}, "root(x) & pare(x, y)");
  b.rel("pare", {1, 0},
        "((sib(y, x) | x = y) & (x != y -> ((T1(y) <-> T1(x)) | (T2(y) <-> T2(x))))) & "
        "!E z1. (sib(z1, x) & sib(y, z1) & ((T1(y) <-> !T1(z1)) | (T2(y) <-> !T2(z1))))");
  b.rel("sib", {0, 0}, "sib(x, y) & (!rc(x) | (same(x, y) & !E z1. (sib(x, z1) & sib(z1, y) & !same(z1, x))))");
  b.rel("sib", {1, 1}, "sib(x, y)");
  PredMap pm1;
  pm1[type_predicate_name({})].push_back(b.parse("root(x)"));
  const Type& left_list = out.elem().left();
  const Type& right_list = out.elem().right();
  if (merged) {
    map_preds(left_list.elem(), {0, 0, 0}, el, {0}, F::truth(true), pm1);
    map_preds(right_list.elem(), {0, 1, 0}, el, {0}, F::truth(true), pm1);
  } else {
    map_preds(left_list.elem(), {0, 0, 0}, el.left(), {0, 0}, F::truth(true), pm1);
    map_preds(right_list.elem(), {0, 1, 0}, el.right(), {0, 1}, F::truth(true), pm1);
  }
  b.preds(0, pm1);
  PredMap pm2;
  pm2[type_predicate_name({0})].push_back(F::truth(true));
  pm2[type_predicate_name({0, 0})].push_back(b.parse("T1(x)"));
  pm2[type_predicate_name({0, 1})].push_back(b.parse("T2(x)"));
  b.preds(1, pm2);
  return b.t;
}

FOTransduction fot_ab_example() {
  FOTransduction t;
  t.name = "ab_example";
  t.copies = 2;
  t.input = {{"lt", 2}, {"S", 2}, {"Q_a", 1}, {"Q_b", 1}};
  t.output = t.input;
  t.universe = {parse_formula("Q_a(x)"), parse_formula("Q_b(x)")};
  t.relations["S"][{0, 0}] = parse_formula("x < y & !E z. (x < z & z < y & Q_a(z))");
  t.relations["S"][{1, 1}] = parse_formula("x < y & !E z. (x < z & z < y & Q_b(z))");
  t.relations["S"][{1, 0}] = parse_formula("false");
  t.relations["S"][{0, 1}] = parse_formula("(Q_a(x) & A z. (z > x -> !Q_a(z))) & (Q_b(y) & A z. (z < y -> !Q_b(z)))");
  t.relations["lt"][{0, 0}] = parse_formula("x < y");
  t.relations["lt"][{1, 1}] = parse_formula("x < y");
  t.relations["lt"][{0, 1}] = parse_formula("true");
  t.relations["lt"][{1, 0}] = parse_formula("false");
  t.relations["Q_a"][{0}] = parse_formula("Q_a(x)");
  t.relations["Q_b"][{1}] = parse_formula("Q_b(x)");
  return t;
}

void need_params(const std::string& name, const std::vector<Type>& params, std::size_t n) {
  if (params.size() != n)
    throw TypeError("transduction '" + name + "' takes " + std::to_string(n) + " type parameter(s)");
}

}  // namespace

std::vector<std::string> builtin_fot_names() { return {"reverse", "append", "coappend", "flat", "block", "ab_example"}; }

FOTransduction builtin_fot(const std::string& name, const std::vector<Type>& params) {
  FOTransduction t;
  if (name == "ab_example") {
    need_params(name, params, 0);
    t = fot_ab_example();
  } else if (name == "block") {
    need_params(name, params, 2);
    t = fot_block(canonical(params[0]), canonical(params[1]));
  } else {
    need_params(name, params, 1);
    Type s = canonical(params[0]);
    if (name == "reverse")
      t = fot_reverse(s);
    else if (name == "append")
      t = fot_append(s);
    else if (name == "coappend")
      t = fot_coappend(s);
    else if (name == "flat")
      t = fot_flat(s);
    else
      throw TypeError("unknown transduction '" + name + "'");
  }
  validate_transduction(t);
  return t;
}

Term builtin_term(const std::string& name, const std::vector<Type>& params) {
  if (name == "block") {
    need_params(name, params, 2);
    return Term::block(canonical(params[0]), canonical(params[1]));
  }
  need_params(name, params, 1);
  Type s = canonical(params[0]);
  if (name == "reverse") return Term::reverse(s);
  if (name == "append") return Term::append(s);
  if (name == "coappend") return Term::coappend(s);
  if (name == "flat") return Term::flat(s);
  throw TypeError("no calculus basic for transduction '" + name + "'");
}

CommuteReport check_commutes(const Term& t, const FOTransduction& fot, const std::vector<Value>& samples) {
  CommuteReport r;
  for (const auto& v : samples) {
    ++r.checked;
    std::string expected, actual;
    try {
      expected = render_value(eval(t, v));
    } catch (const Error& e) {
      expected = std::string("error: ") + e.what();
    }
    try {
      Structure in = encode_value(v, t.dom());
      Structure out = apply_transduction(fot, in);
      actual = render_value(decode_structure(out, t.cod()));
    } catch (const Error& e) {
      actual = std::string("error: ") + e.what();
    }
    if (expected != actual) r.failures.push_back({v, expected, actual});
  }
  return r;
}

}  // namespace listfn
