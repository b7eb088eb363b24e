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

#include "listfn/stdlib.hpp"

#include <algorithm>

#include "listfn/error.hpp"

namespace listfn::stdlib {

namespace {

Term union_chain(std::vector<Term> ts) {
  Term acc = ts.back();
  for (std::size_t i = ts.size() - 1; i-- > 0;) acc = Term::union_of(ts[i], acc);
  return acc;
}

Term compose_chain(std::initializer_list<Term> outer_to_inner) {
  std::vector<Term> ts(outer_to_inner);
  Term acc = ts.back();
  for (std::size_t i = ts.size() - 1; i-- > 0;) acc = Term::compose(ts[i], acc);
  return acc;
}

Type names_type(std::vector<std::string> names) { return Type::finset(std::move(names)); }

// A name not used by t (if t is a finite set), for fresh separators.
std::string fresh_name(const Type& t, const std::string& base) {
  std::string n = base;
  while (t.is_atoms() && t.has_name(n)) n += "'";
  return n;
}

Value inject_value(const SumShape& shape, bool left, Value v) {
  if (shape.flat) return v;
  return left ? Value::inl(std::move(v)) : Value::inr(std::move(v));
}

using Lookup = std::function<Value(const Value&)>;

Term build_finite(const Type& dom, const Type& cod, const Lookup& f) {
  switch (dom.kind()) {
    case Type::Kind::Atom:
    case Type::Kind::FinSet: {
      std::vector<Term> consts;
      for (const auto& n : dom.names()) consts.push_back(Term::constant(f(Value::sym(n)), Type::atom(n), cod));
      return union_chain(std::move(consts));
    }
    case Type::Kind::Bot:
      return Term::constant(f(Value::bot()), dom, cod);
    case Type::Kind::Sum:
      return Term::union_of(build_finite(dom.left(), cod, [&](const Value& x) { return f(Value::inl(x)); }),
                            build_finite(dom.right(), cod, [&](const Value& x) { return f(Value::inr(x)); }));
    case Type::Kind::Prod: {
      const Type& l = dom.left();
      const Type& r = dom.right();
      switch (l.kind()) {
        case Type::Kind::Atom:
        case Type::Kind::FinSet: {
          const auto& names = l.names();
          Type first = Type::atom(names[0]);
          Value a = Value::sym(names[0]);
          Term on_first = Term::compose(build_finite(r, cod, [&](const Value& y) { return f(Value::pair(a, y)); }),
                                        Term::proj2(first, r));
          if (names.size() == 1) return on_first;
          Type rest = names_type({names.begin() + 1, names.end()});
          Term on_rest = build_finite(Type::prod(rest, r), cod, f);
          return Term::compose(Term::union_of(on_first, on_rest), Term::distribute(first, rest, r));
        }
        case Type::Kind::Bot:
          return Term::compose(build_finite(r, cod, [&](const Value& y) { return f(Value::pair(Value::bot(), y)); }),
                               Term::proj2(l, r));
        case Type::Kind::Sum: {
          const Type& l1 = l.left();
          const Type& l2 = l.right();
          Term b1 = build_finite(Type::prod(l1, r), cod, [&](const Value& p) {
            return f(Value::pair(Value::inl(p.fst()), p.snd()));
          });
          Term b2 = build_finite(Type::prod(l2, r), cod, [&](const Value& p) {
            return f(Value::pair(Value::inr(p.fst()), p.snd()));
          });
          return Term::compose(Term::union_of(b1, b2), Term::distribute(l1, l2, r));
        }
        case Type::Kind::Prod: {
          // ((a,b),r) -> (a,(b,r))
          const Type& a = l.left();
          const Type& b = l.right();
          Term fst = Term::proj1(l, r);
          Term assoc = Term::pair(Term::compose(Term::proj1(a, b), fst),
                                  Term::pair(Term::compose(Term::proj2(a, b), fst), Term::proj2(l, r)));
          Term inner = build_finite(Type::prod(a, Type::prod(b, r)), cod, [&](const Value& p) {
            return f(Value::pair(Value::pair(p.fst(), p.snd().fst()), p.snd().snd()));
          });
          return Term::compose(inner, assoc);
        }
        case Type::Kind::List:
          break;
      }
      break;
    }
    case Type::Kind::List:
      break;
  }
  throw TypeError("finite function domain " + render_type(dom) + " is not finite");
}

}  // namespace

Term identity(const Type& t0) {
  Type t = canonical(t0);
  switch (t.kind()) {
    case Type::Kind::Atom:
    case Type::Kind::FinSet: {
      std::vector<Term> consts;
      for (const auto& n : t.names()) consts.push_back(Term::constant(Value::sym(n), Type::atom(n), t));
      return union_chain(std::move(consts));
    }
    case Type::Kind::Bot:
      return Term::constant(Value::bot(), t, t);
    case Type::Kind::Sum:
      return Term::union_of(Term::coproj_l(t.left(), t.right()), Term::coproj_r(t.left(), t.right()));
    case Type::Kind::Prod:
      return Term::pair(Term::proj1(t.left(), t.right()), Term::proj2(t.left(), t.right()));
    case Type::Kind::List:
      return Term::map(identity(t.elem()));
  }
  throw TypeError("identity: unknown type");
}

Term unit(const Type& t) {
  return Term::compose(Term::append(t),
                       Term::pair(identity(t), Term::constant(Value::list({}), t, Type::list(t))));
}

Term finite_function(const Type& dom, const Type& cod, const std::map<Value, Value>& table) {
  Type d = canonical(dom);
  Type c = canonical(cod);
  for (const auto& [k, v] : table) {
    if (!check_value(k, d)) throw TypeError("finite function key " + render_value(k) + " is not in " + render_type(d));
    if (!check_value(v, c)) throw TypeError("finite function value " + render_value(v) + " is not in " + render_type(c));
  }
  return build_finite(d, c, [&](const Value& x) {
    auto it = table.find(x);
    if (it == table.end()) throw TypeError("finite function table is not total: missing " + render_value(x));
    return it->second;
  });
}

namespace {

// Applies `on_cons` to (x, xs) and `on_nil` to bot after co-append.
Term split_list(const Type& t, const Term& on_cons, const Term& on_nil) {
  return Term::compose(Term::union_of(on_cons, on_nil), Term::coappend(t));
}

}  // namespace

Term head(const Type& t) {
  Type lt = Type::list(t);
  return split_list(t, Term::compose(Term::coproj_l(t, Type::bot()), Term::proj1(t, lt)),
                    Term::coproj_r(t, Type::bot()));
}

Term tail(const Type& t) {
  Type lt = Type::list(t);
  return split_list(t, Term::compose(Term::coproj_l(lt, Type::bot()), Term::proj2(t, lt)),
                    Term::coproj_r(lt, Type::bot()));
}

Term last(const Type& t) { return Term::compose(head(t), Term::reverse(t)); }

Term head_or(const Type& t, const Value& dflt) {
  return split_list(t, Term::proj1(t, Type::list(t)), Term::constant(dflt, Type::bot(), t));
}

Term total_tail(const Type& t) {
  Type lt = Type::list(t);
  return split_list(t, Term::proj2(t, lt), Term::constant(Value::list({}), Type::bot(), lt));
}

Type len_type(int n) {
  std::vector<std::string> names;
  for (int i = 0; i <= n; ++i) names.push_back(std::to_string(i));
  return names_type(std::move(names));
}

Term len_upto(int n, const Type& t) {
  if (n < 0) throw TypeError("len_upto: threshold must be nonnegative");
  Type lt = Type::list(t);
  if (n == 0) return Term::constant(Value::sym("0"), lt, len_type(0));
  std::map<Value, Value> succ;
  for (int i = 0; i < n; ++i) succ[Value::sym(std::to_string(i))] = Value::sym(std::to_string(i + 1));
  Term step = Term::compose(finite_function(len_type(n - 1), len_type(n), succ), len_upto(n - 1, t));
  Term zero = Term::constant(Value::sym("0"), Type::bot(), len_type(n));
  return Term::compose(Term::union_of(step, zero), tail(t));
}

Term filter_left(const Type& s0, const Type& g0) {
  Type s = canonical(s0);
  Type g = canonical(g0);
  Type ls = Type::list(s);
  Term keep_or_drop = Term::union_of(unit(s), Term::constant(Value::list({}), g, ls));
  return Term::compose(Term::flat(s), Term::map(keep_or_drop));
}

Term comma(const Type& s0, const Type& g0) {
  Type s = canonical(s0);
  Type g = canonical(g0);
  SumShape shape = make_sum(s, g);
  Type e = shape.type;
  Type le = Type::list(e);
  Type ls = Type::list(s);
  // Surround the input with a separator on both sides, so that block yields
  // separator runs at both ends; a run of L separators then stands for L-1
  // empty groups.
  Value sep = inject_value(shape, false, default_value(g));
  Term prepend = Term::compose(Term::append(e), Term::pair(Term::constant(sep, le, e), identity(le)));
  Term wrap = compose_chain({Term::reverse(e), prepend, Term::reverse(e), prepend});
  Term on_group = Term::union_of(unit(ls), Term::compose(Term::map(Term::constant(Value::list({}), g, ls)),
                                                         total_tail(g)));
  return compose_chain({Term::flat(ls), Term::map(on_group), Term::block(s, g), wrap});
}

Term pair_to_list(const Type& t) {
  return Term::compose(Term::append(t),
                       Term::pair(Term::proj1(t, t), Term::compose(unit(t), Term::proj2(t, t))));
}

Term list_to_pair(const Type& t, const Value& c) {
  Type lt = Type::list(t);
  Term on_cons = Term::pair(Term::proj1(t, lt), Term::compose(head_or(t, c), Term::proj2(t, lt)));
  Term on_nil = Term::constant(Value::pair(c, c), Type::bot(), Type::prod(t, t));
  return split_list(t, on_cons, on_nil);
}

Term concat(const Type& t) { return Term::compose(Term::flat(t), pair_to_list(Type::list(t))); }

Type tuple_type(int k, const Type& t) {
  if (k <= 1) return canonical(t);
  return Type::prod(canonical(t), tuple_type(k - 1, t));
}

namespace {

Term windows2(const Type& t) {
  std::string hash = fresh_name(t, "#");
  SumShape shape = make_sum(t, Type::atom(hash));
  Type e = shape.type;
  Term inj = Term::coproj_l(t, Type::atom(hash));
  Term sep = Term::constant(inject_value(shape, false, Value::sym(hash)), t, e);
  // x -> [x, #, x]
  Term triple = Term::compose(
      Term::append(e),
      Term::pair(inj, Term::compose(Term::append(e), Term::pair(sep, Term::compose(unit(e), inj)))));
  Type lt = Type::list(t);
  Term drop_ends = compose_chain({Term::reverse(lt), total_tail(lt), Term::reverse(lt), total_tail(lt)});
  return compose_chain({Term::map(list_to_pair(t, default_value(t))), drop_ends, comma(t, Type::atom(hash)),
                        Term::flat(e), Term::map(triple)});
}

}  // namespace

Term windows(int k, const Type& t0) {
  if (k < 2) throw TypeError("windows: size must be at least 2");
  Type t = canonical(t0);
  Term w = windows2(t);
  for (int j = 3; j <= k; ++j) {
    // ((x_i, rest), (x_{i+1}, ...)) -> (x_i, (x_{i+1}, ...))
    Type prev = tuple_type(j - 1, t);
    Term first = Term::compose(Term::proj1(t, tuple_type(j - 2, t)), Term::proj1(prev, prev));
    Term combine = Term::pair(first, Term::proj2(prev, prev));
    w = compose_chain({Term::map(combine), windows2(prev), w});
  }
  return w;
}

Term if_then_else(const Term& f, const Term& g0, const Term& g1) {
  const Type& s = f.dom();
  if (f.cod() != bool_type()) throw TypeError("if_then_else: condition must have codomain {0,1}");
  Type zero = Type::atom("0");
  Type one = Type::atom("1");
  Term branches = Term::union_of(Term::compose(g0, Term::proj2(zero, s)), Term::compose(g1, Term::proj2(one, s)));
  return compose_chain({branches, Term::distribute(zero, one, s), Term::pair(f, identity(s))});
}

Term lift_plus(const Term& f) {
  const Type& s = f.dom();
  Type ls = Type::list(s);
  return Term::pair(Term::compose(f, Term::proj1(s, ls)), Term::compose(Term::map(f), Term::proj2(s, ls)));
}

Term is_empty(const Type& t) {
  return split_list(t, Term::constant(bool_value(false), Type::prod(t, Type::list(t)), bool_type()),
                    Term::constant(bool_value(true), Type::bot(), bool_type()));
}

Term is_nonempty(const Type& t) {
  return split_list(t, Term::constant(bool_value(true), Type::prod(t, Type::list(t)), bool_type()),
                    Term::constant(bool_value(false), Type::bot(), bool_type()));
}

// ---------------------------------------------------------------------------
// Reference semantics.

namespace ref {

namespace {

// Membership of an element of a (possibly merged) sum in the left summand.
std::pair<bool, Value> side(bool flat, const Type& s, const Value& x) {
  if (flat) return {s.has_name(x.name()), x};
  return {x.kind() == Value::Kind::InL, x.inner()};
}

}  // namespace

Value head(const Value& xs) {
  if (xs.items().empty()) return Value::inr(Value::bot());
  return Value::inl(xs.items().front());
}

Value tail(const Value& xs) {
  if (xs.items().empty()) return Value::inr(Value::bot());
  return Value::inl(Value::list({xs.items().begin() + 1, xs.items().end()}));
}

Value last(const Value& xs) {
  if (xs.items().empty()) return Value::inr(Value::bot());
  return Value::inl(xs.items().back());
}

Value len_upto(int n, const Value& xs) {
  return Value::sym(std::to_string(std::min<std::size_t>(xs.items().size(), static_cast<std::size_t>(n))));
}

Value filter_left(bool flat, const Type& s, const Value& xs) {
  std::vector<Value> out;
  for (const auto& x : xs.items()) {
    auto [left, y] = side(flat, s, x);
    if (left) out.push_back(y);
  }
  return Value::list(std::move(out));
}

Value comma(bool flat, const Type& s, const Value& xs) {
  std::vector<Value> groups;
  std::vector<Value> cur;
  for (const auto& x : xs.items()) {
    auto [left, y] = side(flat, s, x);
    if (left) {
      cur.push_back(y);
    } else {
      groups.push_back(Value::list(std::move(cur)));
      cur.clear();
    }
  }
  groups.push_back(Value::list(std::move(cur)));
  return Value::list(std::move(groups));
}

Value windows(int k, const Value& xs) {
  const auto& v = xs.items();
  std::vector<Value> out;
  for (std::size_t i = 0; i + k <= v.size(); ++i) {
    Value tup = v[i + k - 1];
    for (std::size_t j = i + k - 1; j-- > i;) tup = Value::pair(v[j], tup);
    out.push_back(tup);
  }
  return Value::list(std::move(out));
}

Value list_to_pair(const Value& xs, const Value& c) {
  const auto& v = xs.items();
  if (v.empty()) return Value::pair(c, c);
  if (v.size() == 1) return Value::pair(v[0], c);
  return Value::pair(v[0], v[1]);
}

}  // namespace ref

// ---------------------------------------------------------------------------
// Catalog.

namespace {

void want_args(std::string_view name, const std::vector<std::string>& args, std::size_t n) {
  if (args.size() != n)
    throw TypeError("std:" + std::string(name) + " expects " + std::to_string(n) + " arguments, got " +
                    std::to_string(args.size()));
}

int parse_nat(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw SyntaxError("expected a natural number, got '" + s + "'", 0);
  return std::stoi(s);
}

bool is_flat_sum(const Type& s, const Type& g) { return make_sum(canonical(s), canonical(g)).flat; }

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> c;
  auto id_fn = [](const Value& x) { return x; };

  c.push_back({"identity", "T", [id_fn](const auto& a, const auto&) {
                 want_args("identity", a, 1);
                 return Instance{"identity", identity(parse_type(a[0])), id_fn};
               }});
  c.push_back({"unit", "T", [](const auto& a, const auto&) {
                 want_args("unit", a, 1);
                 return Instance{"unit", unit(parse_type(a[0])), [](const Value& x) { return Value::list({x}); }};
               }});
  c.push_back({"finite_function", "DOM COD key=value...", [](const auto& a, const auto&) {
                 if (a.size() < 2) want_args("finite_function", a, 2);
                 Type dom = canonical(parse_type(a[0]));
                 Type cod = canonical(parse_type(a[1]));
                 std::map<Value, Value> table;
                 for (std::size_t i = 2; i < a.size(); ++i) {
                   auto eq = a[i].find('=');
                   if (eq == std::string::npos) throw SyntaxError("finite_function entry needs '='", 0);
                   table[parse_value(a[i].substr(0, eq), dom)] = parse_value(a[i].substr(eq + 1), cod);
                 }
                 return Instance{"finite_function", finite_function(dom, cod, table),
                                 [table](const Value& x) { return table.at(x); }};
               }});
  c.push_back({"head", "T", [](const auto& a, const auto&) {
                 want_args("head", a, 1);
                 return Instance{"head", head(parse_type(a[0])), ref::head};
               }});
  c.push_back({"tail", "T", [](const auto& a, const auto&) {
                 want_args("tail", a, 1);
                 return Instance{"tail", tail(parse_type(a[0])), ref::tail};
               }});
  c.push_back({"last", "T", [](const auto& a, const auto&) {
                 want_args("last", a, 1);
                 return Instance{"last", last(parse_type(a[0])), ref::last};
               }});
  c.push_back({"len_upto", "N T", [](const auto& a, const auto&) {
                 want_args("len_upto", a, 2);
                 int n = parse_nat(a[0]);
                 return Instance{"len_upto", len_upto(n, parse_type(a[1])),
                                 [n](const Value& x) { return ref::len_upto(n, x); }};
               }});
  c.push_back({"filter_left", "S G", [](const auto& a, const auto&) {
                 want_args("filter_left", a, 2);
                 Type s = canonical(parse_type(a[0]));
                 Type g = canonical(parse_type(a[1]));
                 bool flat = is_flat_sum(s, g);
                 return Instance{"filter_left", filter_left(s, g),
                                 [flat, s](const Value& x) { return ref::filter_left(flat, s, x); }};
               }});
  c.push_back({"comma", "S G", [](const auto& a, const auto&) {
                 want_args("comma", a, 2);
                 Type s = canonical(parse_type(a[0]));
                 Type g = canonical(parse_type(a[1]));
                 bool flat = is_flat_sum(s, g);
                 return Instance{"comma", comma(s, g), [flat, s](const Value& x) { return ref::comma(flat, s, x); }};
               }});
  c.push_back({"pair_to_list", "T", [](const auto& a, const auto&) {
                 want_args("pair_to_list", a, 1);
                 return Instance{"pair_to_list", pair_to_list(parse_type(a[0])),
                                 [](const Value& x) { return Value::list({x.fst(), x.snd()}); }};
               }});
  c.push_back({"list_to_pair", "T DEFAULT", [](const auto& a, const auto&) {
                 want_args("list_to_pair", a, 2);
                 Type t = canonical(parse_type(a[0]));
                 Value d = parse_value(a[1], t);
                 return Instance{"list_to_pair", list_to_pair(t, d),
                                 [d](const Value& x) { return ref::list_to_pair(x, d); }};
               }});
  c.push_back({"concat", "T", [](const auto& a, const auto&) {
                 want_args("concat", a, 1);
                 return Instance{"concat", concat(parse_type(a[0])), [](const Value& x) {
                                   std::vector<Value> out = x.fst().items();
                                   out.insert(out.end(), x.snd().items().begin(), x.snd().items().end());
                                   return Value::list(std::move(out));
                                 }};
               }});
  c.push_back({"windows", "K T", [](const auto& a, const auto&) {
                 want_args("windows", a, 2);
                 int k = parse_nat(a[0]);
                 return Instance{"windows", windows(k, parse_type(a[1])),
                                 [k](const Value& x) { return ref::windows(k, x); }};
               }});
  c.push_back({"if_then_else", "F G0 G1", [](const auto& a, const TermParser& p) {
                 want_args("if_then_else", a, 3);
                 Term f = p(a[0]);
                 Term g0 = p(a[1]);
                 Term g1 = p(a[2]);
                 return Instance{"if_then_else", if_then_else(f, g0, g1), [f, g0, g1](const Value& x) {
                                   return eval(eval(f, x).name() == "1" ? g1 : g0, x);
                                 }};
               }});
  c.push_back({"lift_plus", "F", [](const auto& a, const TermParser& p) {
                 want_args("lift_plus", a, 1);
                 Term f = p(a[0]);
                 return Instance{"lift_plus", lift_plus(f), [f](const Value& x) {
                                   std::vector<Value> ys;
                                   for (const auto& y : x.snd().items()) ys.push_back(eval(f, y));
                                   return Value::pair(eval(f, x.fst()), Value::list(std::move(ys)));
                                 }};
               }});
  c.push_back({"is_empty", "T", [](const auto& a, const auto&) {
                 want_args("is_empty", a, 1);
                 return Instance{"is_empty", is_empty(parse_type(a[0])),
                                 [](const Value& x) { return bool_value(x.items().empty()); }};
               }});
  c.push_back({"is_nonempty", "T", [](const auto& a, const auto&) {
                 want_args("is_nonempty", a, 1);
                 return Instance{"is_nonempty", is_nonempty(parse_type(a[0])),
                                 [](const Value& x) { return bool_value(!x.items().empty()); }};
               }});
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = make_catalog();
  return c;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw SyntaxError("unknown library function std:" + std::string(name), 0);
}

Instance build(std::string_view name, const std::vector<std::string>& args, const TermParser& parse_term) {
  return catalog_entry(name).build(args, parse_term);
}

}  // namespace listfn::stdlib
