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

#include "listfn/term.hpp"

#include <set>

#include "listfn/error.hpp"

namespace listfn {

GroupSpec::GroupSpec(std::string name, std::vector<std::string> elements, std::vector<int> table,
                     int identity)
    : name_(std::move(name)), elements_(std::move(elements)), table_(std::move(table)), identity_(identity) {
  const int n = size();
  if (n == 0) throw TypeError("group " + name_ + " has no elements");
  if (table_.size() != static_cast<std::size_t>(n * n))
    throw TypeError("group " + name_ + " table has wrong size");
  for (int x : table_)
    if (x < 0 || x >= n) throw TypeError("group " + name_ + " table entry out of range");
  if (identity_ < 0 || identity_ >= n) throw TypeError("group " + name_ + " identity out of range");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
          throw TypeError("group " + name_ + " is not associative");
  for (int a = 0; a < n; ++a) {
    if (mult(a, identity_) != a || mult(identity_, a) != a)
      throw TypeError("group " + name_ + " identity law fails");
    bool has_inverse = false;
    for (int b = 0; b < n && !has_inverse; ++b)
      has_inverse = mult(a, b) == identity_ && mult(b, a) == identity_;
    if (!has_inverse) throw TypeError("group " + name_ + " element " + elements_[a] + " has no inverse");
  }
  (void)Type::finset(elements_);
}

GroupSpec GroupSpec::cyclic(int n) {
  if (n < 1) throw TypeError("cyclic group order must be positive");
  std::vector<std::string> els;
  std::vector<int> table;
  for (int i = 0; i < n; ++i) els.push_back(std::to_string(i));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table.push_back((a + b) % n);
  return GroupSpec("Z" + std::to_string(n), std::move(els), std::move(table), 0);
}

int GroupSpec::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (elements_[i] == name) return i;
  return -1;
}

struct Term::Node {
  Op op;
  std::vector<Type> params;
  std::vector<Term> args;
  Value value;
  std::shared_ptr<const GroupSpec> group;
  Type dom;
  Type cod;
  std::string error;
  bool fo = true;
};

namespace {

const char* op_name(Term::Op op) {
  switch (op) {
    case Term::Op::Const: return "const";
    case Term::Op::Proj1: return "proj1";
    case Term::Op::Proj2: return "proj2";
    case Term::Op::CoProjL: return "inlco";
    case Term::Op::CoProjR: return "inrco";
    case Term::Op::Distribute: return "dist";
    case Term::Op::Reverse: return "reverse";
    case Term::Op::Flat: return "flat";
    case Term::Op::Append: return "append";
    case Term::Op::CoAppend: return "coappend";
    case Term::Op::Block: return "block";
    case Term::Op::Union: return "union";
    case Term::Op::Compose: return "compose";
    case Term::Op::Map: return "map";
    case Term::Op::Pair: return "pair";
    case Term::Op::PrefixGroupMult: return "gprefix";
    case Term::Op::Guarded: return "guard";
  }
  return "?";
}

}  // namespace

Type bool_type() { return Type::finset({"0", "1"}); }
Value bool_value(bool b) { return Value::sym(b ? "1" : "0"); }

Term Term::make(Node n) {
  for (auto& p : n.params) p = canonical(p);
  for (const auto& a : n.args) {
    n.fo = n.fo && a.first_order();
    if (n.error.empty() && !a.well_typed()) n.error = a.type_error();
  }
  auto fail = [&](const std::string& msg) {
    if (n.error.empty()) n.error = std::string(op_name(n.op)) + ": " + msg;
  };
  const auto& P = n.params;
  if (n.error.empty()) {
    switch (n.op) {
      case Op::Const:
        n.dom = P[0];
        n.cod = P[1];
        if (!check_value(n.value, n.cod))
          fail("constant " + render_value(n.value) + " does not inhabit " + render_type(n.cod));
        break;
      case Op::Proj1:
      case Op::Proj2:
        n.dom = Type::prod(P[0], P[1]);
        n.cod = n.op == Op::Proj1 ? P[0] : P[1];
        break;
      case Op::CoProjL:
      case Op::CoProjR: {
        auto shape = make_sum(P[0], P[1]);
        n.dom = n.op == Op::CoProjL ? P[0] : P[1];
        n.cod = shape.type;
        break;
      }
      case Op::Distribute: {
        auto in = make_sum(P[0], P[1]);
        n.dom = Type::prod(in.type, P[2]);
        n.cod = sum_of(Type::prod(P[0], P[2]), Type::prod(P[1], P[2]));
        break;
      }
      case Op::Reverse:
        n.dom = n.cod = Type::list(P[0]);
        break;
      case Op::Flat:
        n.dom = Type::list(Type::list(P[0]));
        n.cod = Type::list(P[0]);
        break;
      case Op::Append:
        n.dom = Type::prod(P[0], Type::list(P[0]));
        n.cod = Type::list(P[0]);
        break;
      case Op::CoAppend:
        n.dom = Type::list(P[0]);
        n.cod = Type::sum(Type::prod(P[0], Type::list(P[0])), Type::bot());
        break;
      case Op::Block: {
        auto in = make_sum(P[0], P[1]);
        n.dom = Type::list(in.type);
        n.cod = Type::list(Type::sum(Type::list(P[0]), Type::list(P[1])));
        break;
      }
      case Op::Union: {
        const Term& f = n.args[0];
        const Term& g = n.args[1];
        if (f.cod() != g.cod()) {
          fail("codomains differ: " + render_type(f.cod()) + " vs " + render_type(g.cod()));
          break;
        }
        auto in = make_sum(f.dom(), g.dom());
        n.dom = in.type;
        n.cod = f.cod();
        break;
      }
      case Op::Compose: {
        const Term& g = n.args[0];
        const Term& f = n.args[1];
        if (f.cod() != g.dom()) {
          fail("inner codomain " + render_type(f.cod()) + " does not match outer domain " +
               render_type(g.dom()));
          break;
        }
        n.dom = f.dom();
        n.cod = g.cod();
        break;
      }
      case Op::Map:
        n.dom = Type::list(n.args[0].dom());
        n.cod = Type::list(n.args[0].cod());
        break;
      case Op::Pair:
        if (n.args[0].dom() != n.args[1].dom()) {
          fail("domains differ: " + render_type(n.args[0].dom()) + " vs " +
               render_type(n.args[1].dom()));
          break;
        }
        n.dom = n.args[0].dom();
        n.cod = Type::prod(n.args[0].cod(), n.args[1].cod());
        break;
      case Op::PrefixGroupMult:
        n.dom = n.cod = Type::list(n.group->type());
        n.fo = false;
        break;
      case Op::Guarded: {
        const Term& inner = n.args[0];
        if (n.args[1].dom() != inner.dom() || n.args[1].cod() != bool_type()) {
          fail("domain predicate must have type " + render_type(inner.dom()) + " -> {0,1}");
          break;
        }
        if (n.args[2].dom() != inner.cod() || n.args[2].cod() != bool_type()) {
          fail("codomain predicate must have type " + render_type(inner.cod()) + " -> {0,1}");
          break;
        }
        n.dom = inner.dom();
        n.cod = inner.cod();
        break;
      }
    }
  }
  if (n.op == Op::PrefixGroupMult) n.fo = false;
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::constant(Value v, Type dom, Type cod) {
  Node n;
  n.op = Op::Const;
  n.params = {std::move(dom), std::move(cod)};
  n.value = std::move(v);
  return make(std::move(n));
}

Term Term::basic(Op op, std::vector<Type> params) {
  Node n;
  n.op = op;
  n.params = std::move(params);
  return make(std::move(n));
}

Term Term::proj1(Type s, Type g) { return basic(Op::Proj1, {std::move(s), std::move(g)}); }
Term Term::proj2(Type s, Type g) { return basic(Op::Proj2, {std::move(s), std::move(g)}); }
Term Term::coproj_l(Type s, Type g) { return basic(Op::CoProjL, {std::move(s), std::move(g)}); }
Term Term::coproj_r(Type s, Type g) { return basic(Op::CoProjR, {std::move(s), std::move(g)}); }
Term Term::distribute(Type s, Type g, Type d) {
  return basic(Op::Distribute, {std::move(s), std::move(g), std::move(d)});
}
Term Term::reverse(Type s) { return basic(Op::Reverse, {std::move(s)}); }
Term Term::flat(Type s) { return basic(Op::Flat, {std::move(s)}); }
Term Term::append(Type s) { return basic(Op::Append, {std::move(s)}); }
Term Term::coappend(Type s) { return basic(Op::CoAppend, {std::move(s)}); }
Term Term::block(Type s, Type g) { return basic(Op::Block, {std::move(s), std::move(g)}); }

Term Term::union_of(Term f, Term g) {
  Node n;
  n.op = Op::Union;
  n.args = {std::move(f), std::move(g)};
  return make(std::move(n));
}

Term Term::compose(Term g, Term f) {
  Node n;
  n.op = Op::Compose;
  n.args = {std::move(g), std::move(f)};
  return make(std::move(n));
}

Term Term::map(Term f) {
  Node n;
  n.op = Op::Map;
  n.args = {std::move(f)};
  return make(std::move(n));
}

Term Term::pair(Term f, Term g) {
  Node n;
  n.op = Op::Pair;
  n.args = {std::move(f), std::move(g)};
  return make(std::move(n));
}

Term Term::prefix_group(GroupSpec g) {
  Node n;
  n.op = Op::PrefixGroupMult;
  n.group = std::make_shared<const GroupSpec>(std::move(g));
  return make(std::move(n));
}

Term Term::guarded(Term inner, Term dom_pred, Term cod_pred) {
  Node n;
  n.op = Op::Guarded;
  n.args = {std::move(inner), std::move(dom_pred), std::move(cod_pred)};
  return make(std::move(n));
}

Term::Op Term::op() const { return node_->op; }
bool Term::well_typed() const { return node_->error.empty(); }
const std::string& Term::type_error() const { return node_->error; }

const Type& Term::dom() const {
  if (!well_typed()) throw TypeError(node_->error);
  return node_->dom;
}

const Type& Term::cod() const {
  if (!well_typed()) throw TypeError(node_->error);
  return node_->cod;
}

const std::vector<Type>& Term::params() const { return node_->params; }
const std::vector<Term>& Term::args() const { return node_->args; }
const Value& Term::value() const { return node_->value; }

const GroupSpec& Term::group() const {
  if (!node_->group) throw Error("term has no group");
  return *node_->group;
}

bool Term::first_order() const { return node_->fo; }

std::pair<Type, Type> infer_type(const Term& t) { return {t.dom(), t.cod()}; }

bool is_first_order(const Term& t) { return t.first_order(); }

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args()) n += term_size(a);
  return n;
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

[[noreturn]] void dynamic_mismatch(const char* where, const Value& v) {
  throw EvalError(std::string(where) + ": unexpected input " + render_value(v));
}

// Which summand a value of a (possibly merged) sum belongs to, and its payload.
std::pair<bool, Value> split_sum(bool flat, const Type& left, const Value& v, const char* where) {
  if (flat) {
    if (v.kind() != Value::Kind::Sym) dynamic_mismatch(where, v);
    return {left.has_name(v.name()), v};
  }
  if (v.kind() == Value::Kind::InL) return {true, v.inner()};
  if (v.kind() == Value::Kind::InR) return {false, v.inner()};
  dynamic_mismatch(where, v);
}

Value inject(bool flat, bool left, Value v) {
  if (flat) return v;
  return left ? Value::inl(std::move(v)) : Value::inr(std::move(v));
}

const std::vector<Value>& list_items(const Value& v, const char* where) {
  if (v.kind() != Value::Kind::List) dynamic_mismatch(where, v);
  return v.items();
}

const Value& pair_part(const Value& v, int i, const char* where) {
  if (v.kind() != Value::Kind::Pair) dynamic_mismatch(where, v);
  return i == 0 ? v.fst() : v.snd();
}

bool is_true(const Value& v) { return v.kind() == Value::Kind::Sym && v.name() == "1"; }

}  // namespace

Value eval(const Term& t, const Value& v) {
  if (!t.well_typed()) throw TypeError(t.type_error());
  const auto& P = t.params();
  const auto& A = t.args();
  switch (t.op()) {
    case Term::Op::Const:
      return t.value();
    case Term::Op::Proj1:
      return pair_part(v, 0, "proj1");
    case Term::Op::Proj2:
      return pair_part(v, 1, "proj2");
    case Term::Op::CoProjL:
      return inject(t.cod().kind() != Type::Kind::Sum, true, v);
    case Term::Op::CoProjR:
      return inject(t.cod().kind() != Type::Kind::Sum, false, v);
    case Term::Op::Distribute: {
      bool flat = t.dom().left().kind() != Type::Kind::Sum;
      auto [left, x] = split_sum(flat, P[0], pair_part(v, 0, "dist"), "dist");
      return inject(false, left, Value::pair(x, pair_part(v, 1, "dist")));
    }
    case Term::Op::Reverse: {
      const auto& xs = list_items(v, "reverse");
      return Value::list({xs.rbegin(), xs.rend()});
    }
    case Term::Op::Flat: {
      std::vector<Value> out;
      for (const auto& x : list_items(v, "flat")) {
        const auto& ys = list_items(x, "flat");
        out.insert(out.end(), ys.begin(), ys.end());
      }
      return Value::list(std::move(out));
    }
    case Term::Op::Append: {
      const auto& tail = list_items(pair_part(v, 1, "append"), "append");
      std::vector<Value> out;
      out.reserve(tail.size() + 1);
      out.push_back(v.fst());
      out.insert(out.end(), tail.begin(), tail.end());
      return Value::list(std::move(out));
    }
    case Term::Op::CoAppend: {
      const auto& xs = list_items(v, "coappend");
      if (xs.empty()) return Value::inr(Value::bot());
      return Value::inl(Value::pair(xs.front(), Value::list({xs.begin() + 1, xs.end()})));
    }
    case Term::Op::Block: {
      bool flat = t.dom().elem().kind() != Type::Kind::Sum;
      std::vector<Value> out;
      std::vector<Value> run;
      bool run_left = false;
      for (const auto& x : list_items(v, "block")) {
        auto [left, y] = split_sum(flat, P[0], x, "block");
        if (!run.empty() && left != run_left) {
          out.push_back(inject(false, run_left, Value::list(std::move(run))));
          run.clear();
        }
        run_left = left;
        run.push_back(std::move(y));
      }
      if (!run.empty()) out.push_back(inject(false, run_left, Value::list(std::move(run))));
      return Value::list(std::move(out));
    }
    case Term::Op::Union: {
      bool flat = t.dom().kind() != Type::Kind::Sum;
      auto [left, x] = split_sum(flat, A[0].dom(), v, "union");
      return eval(left ? A[0] : A[1], x);
    }
    case Term::Op::Compose:
      return eval(A[0], eval(A[1], v));
    case Term::Op::Map: {
      const auto& xs = list_items(v, "map");
      std::vector<Value> out;
      out.reserve(xs.size());
      for (const auto& x : xs) out.push_back(eval(A[0], x));
      return Value::list(std::move(out));
    }
    case Term::Op::Pair:
      return Value::pair(eval(A[0], v), eval(A[1], v));
    case Term::Op::PrefixGroupMult: {
      const GroupSpec& g = t.group();
      std::vector<Value> out;
      int acc = g.identity();
      for (const auto& x : list_items(v, "gprefix")) {
        int e = x.kind() == Value::Kind::Sym ? g.index_of(x.name()) : -1;
        if (e < 0) dynamic_mismatch("gprefix", x);
        acc = g.mult(acc, e);
        out.push_back(Value::sym(g.elements()[acc]));
      }
      return Value::list(std::move(out));
    }
    case Term::Op::Guarded: {
      if (!is_true(eval(A[1], v)))
        throw EvalError("guard violation: input " + render_value(v) + " is outside the domain");
      Value out = eval(A[0], v);
#ifndef NDEBUG
      if (!is_true(eval(A[2], out)))
        throw EvalError("guard violation: output " + render_value(out) + " is outside the codomain");
#endif
      return out;
    }
  }
  throw Error("unknown term");
}

SubsetSpec::SubsetSpec(Term pred) : pred_(std::move(pred)) {
  if (pred_.cod() != bool_type())
    throw TypeError("characteristic function must have codomain {0,1}, got " + render_type(pred_.cod()));
}

bool SubsetSpec::contains(const Value& v) const { return is_true(eval(pred_, v)); }

SubsetSpec characteristic_subset(const Term& pred) { return SubsetSpec(pred); }

}  // namespace listfn
