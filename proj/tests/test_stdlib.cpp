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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "listfn/error.hpp"
#include "listfn/stdlib.hpp"
#include "listfn/term_syntax.hpp"
#include "oracles.hpp"
#include "panels.hpp"

using namespace listfn;
using testing::ty;
using testing::val;

namespace S = listfn::stdlib;

namespace {
const Type kAB = Type::finset({"a", "b"});
}

TEST_CASE("identity and unit") {
  Term id = S::identity(ty("{a,b}*"));
  CHECK(eval(id, val("[a,b]", "{a,b}*")) == val("[a,b]", "{a,b}*"));
  CHECK(eval(S::identity(ty("{a}×{b}")), val("(a,b)", "{a}×{b}")) == val("(a,b)", "{a}×{b}"));
  CHECK(eval(S::identity(ty("{a}*+{b}")), val("inl [a]", "{a}*+{b}")) == val("inl [a]", "{a}*+{b}"));
  CHECK(eval(S::unit(kAB), val("a", kAB)) == val("[a]", "{a,b}*"));
  CHECK(eval(S::unit(ty("{a}*")), val("[]", "{a}*")) == val("[[]]", "{a}**"));
  CHECK(eval(S::unit(ty("{a}×{b}")), val("(a,b)", "{a}×{b}")) == val("[(a,b)]", "({a}×{b})*"));
}

TEST_CASE("finite functions") {
  Type xy = ty("{x,y}");
  Term f = S::finite_function(kAB, xy, {{val("a", kAB), val("x", xy)}, {val("b", kAB), val("y", xy)}});
  CHECK(eval(f, val("a", kAB)) == val("x", xy));
  CHECK(eval(f, val("b", kAB)) == val("y", xy));
  CHECK_THROWS_AS(S::finite_function(kAB, xy, {{val("a", kAB), val("x", xy)}}), TypeError);
  Type pair = ty("{a,b}×{a,b}");
  std::map<Value, Value> table;
  for (const auto& v : finite_values(pair)) table[v] = val(v.fst() == v.snd() ? "x" : "y", xy);
  Term eq = S::finite_function(pair, xy, table);
  for (const auto& v : finite_values(pair)) CHECK(eval(eq, v) == table[v]);
}

TEST_CASE("head, tail, last") {
  Value xs = val("[a,b,c]", "{a,b,c}*");
  Type abc = ty("{a,b,c}");
  CHECK(render_value(eval(S::head(abc), xs)) == "inl a");
  CHECK(render_value(eval(S::tail(abc), xs)) == "inl [b,c]");
  CHECK(render_value(eval(S::last(abc), xs)) == "inl c");
  CHECK(eval(S::head(abc), Value::list({})) == Value::inr(Value::bot()));
  CHECK(eval(S::head_or(abc, val("b", abc)), Value::list({})) == val("b", abc));
  CHECK(eval(S::total_tail(abc), Value::list({})) == Value::list({}));
}

TEST_CASE("length up to a threshold") {
  Term l2 = S::len_upto(2, kAB);
  CHECK(eval(l2, val("[a,b,a]", "{a,b}*")) == Value::sym("2"));
  CHECK(eval(l2, Value::list({})) == Value::sym("0"));
  CHECK(S::len_upto(0, kAB).op() == Term::Op::Const);
  for (const auto& v : enumerate_values_upto(Type::list(kAB), 7))
    CHECK(eval(S::len_upto(0, kAB), v) == Value::sym("0"));
}

TEST_CASE("filter and comma on the worked inputs") {
  Type s = ty("{a,b,c}"), g = ty("{d,e}");
  Value in = val("[a,c,d,e,b,e,d,a]", "{a,b,c,d,e}*");
  CHECK(eval(S::filter_left(s, g), in) == val("[a,c,b,a]", "{a,b,c}*"));
  CHECK(eval(S::filter_left(s, g), Value::list({})) == Value::list({}));
  CHECK(eval(S::filter_left(s, g), val("[d,e,d]", "{d,e}*")) == Value::list({}));
  Type hash = ty("{#}");
  Term c = S::comma(s, hash);
  Value w = val("[a,b,#,c,#,#,a,#,#,#,b,c,#]", "{a,b,c,#}*");
  CHECK(render_value(eval(c, w)) == "[[a,b],[c],[],[a],[],[],[b,c],[]]");
  CHECK(render_value(eval(c, val("[#]", "{#}*"))) == "[[],[]]");
  CHECK(render_value(eval(c, val("[a]", "{a}*"))) == "[[a]]");
}

TEST_CASE("comma counts groups and reconstructs its input") {
  Type s = kAB, hash = ty("{#}");
  Term c = S::comma(s, hash);
  for (const auto& x : enumerate_values_upto(ty("{a,b,#}*"), 9)) {
    Value groups = eval(c, x);
    std::size_t seps = 0;
    for (const auto& e : x.items()) seps += e.name() == "#";
    REQUIRE(groups.items().size() == seps + 1);
    std::vector<Value> rebuilt;
    for (std::size_t i = 0; i < groups.items().size(); ++i) {
      if (i) rebuilt.push_back(Value::sym("#"));
      for (const auto& e : groups.items()[i].items()) rebuilt.push_back(e);
    }
    REQUIRE(Value::list(rebuilt) == x);
  }
}

TEST_CASE("pairs and lists") {
  Type abc = ty("{a,b,c}");
  CHECK(eval(S::pair_to_list(abc), val("(a,b)", "{a,b,c}×{a,b,c}")) == val("[a,b]", "{a,b,c}*"));
  Term lp = S::list_to_pair(abc, val("c", abc));
  CHECK(render_value(eval(lp, Value::list({}))) == "(c,c)");
  CHECK(render_value(eval(lp, val("[a]", "{a,b,c}*"))) == "(a,c)");
  CHECK(render_value(eval(lp, val("[a,b]", "{a,b,c}*"))) == "(a,b)");
  CHECK(render_value(eval(lp, val("[b,a,a]", "{a,b,c}*"))) == "(b,a)");
  Term cat = S::concat(abc);
  Type pt = ty("{a,b,c}*×{a,b,c}*");
  CHECK(render_value(eval(cat, val("([a],[b,c])", pt))) == "[a,b,c]");
  CHECK(render_value(eval(cat, val("([],[])", pt))) == "[]");
  CHECK(render_value(eval(cat, val("([a,b],[])", pt))) == "[a,b]");
}

TEST_CASE("windows") {
  Type x = ty("{x1,x2,x3}");
  CHECK(render_value(eval(S::windows(2, x), val("[x1,x2,x3]", "{x1,x2,x3}*"))) == "[(x1,x2),(x2,x3)]");
  CHECK(render_value(eval(S::windows(2, x), val("[x1]", "{x1,x2,x3}*"))) == "[]");
  Type d = ty("{1,2,3,4}");
  Value in = val("[1,2,3,4]", "{1,2,3,4}*");
  CHECK(eval(S::windows(3, d), in) == oracle::windows(3, in));
  CHECK(render_value(eval(S::windows(3, d), in)) == "[(1,2,3),(2,3,4)]");
  CHECK_THROWS_AS(S::windows(1, d), TypeError);
  for (std::size_t k = 2; k <= 4; ++k)
    for (const auto& v : enumerate_values_upto(Type::list(kAB), 9)) {
      std::size_t n = v.items().size();
      REQUIRE(eval(S::windows(static_cast<int>(k), kAB), v).items().size() == (n >= k ? n - k + 1 : 0));
    }
}

TEST_CASE("if-then-else dispatches on the condition") {
  Type lab = Type::list(kAB);
  Term tail = S::total_tail(kAB), id = S::identity(lab);
  Term ite = S::if_then_else(S::is_empty(kAB), tail, id);
  CHECK(eval(ite, Value::list({})) == Value::list({}));
  Term always0 = S::if_then_else(Term::constant(bool_value(false), lab, bool_type()), tail, id);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    Value v = random_value(lab, 12, rng);
    CHECK(eval(always0, v) == eval(tail, v));
    CHECK(eval(ite, v) == (v.items().empty() ? v : eval(tail, v)));
  }
}

TEST_CASE("lift to nonempty lists") {
  Type abc = ty("{a,b,c}");
  Term lift = S::lift_plus(S::unit(abc));
  CHECK(lift.dom() == Type::prod(abc, Type::list(abc)));
  CHECK(lift.cod() == Type::prod(Type::list(abc), Type::list(Type::list(abc))));
  CHECK(render_value(eval(lift, val("(a,[b,c])", lift.dom()))) == "([a],[[b],[c]])");
  Term lid = S::lift_plus(S::identity(abc));
  for (const auto& v : enumerate_values_upto(lid.dom(), 7)) CHECK(eval(lid, v) == v);
}

TEST_CASE("every catalog entry agrees with its oracle") {
  std::set<std::string> covered;
  for (const auto& c : testing::std_panel()) {
    INFO(c.name);
    covered.insert(testing::catalog_name(c.name));
    REQUIRE(c.term.well_typed());
    for (const auto& v : enumerate_values_upto(c.term.dom(), 8)) REQUIRE(eval(c.term, v) == c.oracle(v));
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 1000; ++i) {
      Value v = random_value(c.term.dom(), 40, rng);
      REQUIRE(eval(c.term, v) == c.oracle(v));
    }
  }
  for (const auto& e : S::catalog()) CHECK_MESSAGE(covered.count(e.name), "no oracle for std:" << e.name);
}

TEST_CASE("catalog terms are built only from calculus nodes") {
  // Library entries are ordinary terms, so the generic interpreter agrees.
  for (const auto& c : testing::std_panel()) {
    INFO(c.name);
    for (const auto& v : enumerate_values_upto(c.term.dom(), 6)) REQUIRE(oracle::interpret(c.term, v) == c.oracle(v));
  }
}

TEST_CASE("catalog entries build from text") {
  S::TermParser p = [](std::string_view s) { return parse_term(s); };
  S::Instance comma = S::build("comma", {"{a,b,c}", "{#}"}, p);
  Value w = val("[a,#,b]", "{a,b,c,#}*");
  CHECK(eval(comma.term, w) == comma.reference(w));
  CHECK(render_value(eval(parse_term("(std:comma {a,b,c} {#})"), w)) == "[[a],[b]]");
  CHECK_THROWS_AS(S::catalog_entry("nope"), SyntaxError);
  CHECK_THROWS(S::build("windows", {"{a}"}, p));
}
