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
#include "doctest.h"
#include "listfn/error.hpp"
#include "listfn/stdlib.hpp"
#include "listfn/term_syntax.hpp"
#include "oracles.hpp"
#include "panels.hpp"

using namespace listfn;
using testing::ty;
using testing::val;

namespace {

const Type kAB = Type::finset({"a", "b"});
const Type kCD = Type::finset({"c", "d"});

Value unwrap(const Value& v) { return v.kind() == Value::Kind::InL || v.kind() == Value::Kind::InR ? v.inner() : v; }

}  // namespace

TEST_CASE("typing rules") {
  Term t = Term::compose(Term::flat(kAB), Term::map(Term::reverse(kAB)));
  CHECK(t.dom() == Type::list(Type::list(kAB)));
  CHECK(t.cod() == Type::list(kAB));
  Type a = Type::finset({"a"});
  Term app = Term::append(a);
  CHECK(app.dom() == Type::prod(a, Type::list(a)));
  CHECK(app.cod() == Type::list(a));
  CHECK(Term::coappend(kAB).cod() == Type::sum(Type::prod(kAB, Type::list(kAB)), Type::bot()));
  CHECK(Term::block(kAB, kCD).cod() == Type::list(Type::sum(Type::list(kAB), Type::list(kCD))));
  Term d = Term::distribute(Type::list(kAB), kCD, a);
  CHECK(d.dom() == Type::prod(Type::sum(Type::list(kAB), kCD), a));
  CHECK(d.cod() == Type::sum(Type::prod(Type::list(kAB), a), Type::prod(kCD, a)));
  CHECK(Term::prefix_group(GroupSpec::cyclic(2)).dom() == ty("{0,1}*"));
}

TEST_CASE("ill-composed terms report the node") {
  Term bad = Term::compose(Term::reverse(kAB), Term::append(kCD));
  CHECK_FALSE(bad.well_typed());
  CHECK(bad.type_error().find("compose") != std::string::npos);
  CHECK_THROWS_AS(infer_type(bad), TypeError);
  CHECK_THROWS_AS(eval(bad, val("(c,[])", "{c,d}×{c,d}*")), TypeError);
  Term nested = Term::map(bad);
  CHECK_FALSE(nested.well_typed());
  CHECK_FALSE(Term::union_of(Term::reverse(kAB), Term::flat(kCD)).well_typed());
  CHECK_FALSE(Term::pair(Term::reverse(kAB), Term::reverse(kCD)).well_typed());
}

TEST_CASE("point values of the list basics") {
  Term b = Term::block(kAB, kCD);
  Value in = val("[a,b,c,d,a,d,a,b,c,d]", "{a,b,c,d}*");
  CHECK(render_value(eval(b, in)) == "[inl [a,b],inr [c,d],inl [a],inr [d],inl [a,b],inr [c,d]]");
  Term f = Term::flat(Type::finset({"a", "b", "c"}));
  CHECK(eval(f, val("[[a,b],[c]]", "{a,b,c}**")) == val("[a,b,c]", "{a,b,c}*"));
  CHECK(eval(Term::coappend(kAB), Value::list({})) == Value::inr(Value::bot()));
  CHECK(eval(Term::coappend(kAB), val("[a]", "{a,b}*")) == Value::inl(val("(a,[])", "{a,b}×{a,b}*")));
  CHECK(eval(Term::block(kAB, kCD), Value::list({})) == Value::list({}));
}

TEST_CASE("prefix group multiplication") {
  GroupSpec z3 = GroupSpec::cyclic(3);
  Value in = val("[1,2,2]", "{0,1,2}*");
  Value want = oracle::prefix_products(z3, in);
  CHECK(want == val("[1,0,2]", "{0,1,2}*"));
  CHECK(eval(Term::prefix_group(z3), in) == want);
  std::mt19937_64 rng(3);
  GroupSpec trivial("one", {"e"}, {0}, 0);
  for (int i = 0; i < 200; ++i) {
    Value xs = random_value(Type::list(z3.type()), 30, rng);
    Value ys = eval(Term::prefix_group(z3), xs);
    if (!xs.items().empty()) {
      int acc = 0;
      for (const auto& x : xs.items()) acc = (acc + std::stoi(x.name())) % 3;
      CHECK(ys.items().back().name() == std::to_string(acc));
    }
    Value es = random_value(Type::list(trivial.type()), 20, rng);
    CHECK(eval(Term::prefix_group(trivial), es) == es);
  }
}

TEST_CASE("groups are validated") {
  CHECK_THROWS(GroupSpec("bad", {"0", "1"}, {0, 1, 1, 1}, 0));  // 1 has no inverse
  CHECK_THROWS(GroupSpec("bad", {"0", "1"}, {0, 1, 0, 1}, 0));  // identity law fails
  CHECK_NOTHROW(GroupSpec::cyclic(5));
}

TEST_CASE("first-order flag") {
  CHECK(is_first_order(Term::reverse(kAB)));
  Term g = Term::prefix_group(GroupSpec::cyclic(2));
  CHECK_FALSE(is_first_order(g));
  CHECK_FALSE(is_first_order(Term::compose(Term::reverse(ty("{0,1}")), g)));
  CHECK_FALSE(is_first_order(Term::map(g)));
  CHECK(is_first_order(stdlib::comma(kAB, Type::finset({"#"}))));
}

TEST_CASE("characteristic subsets") {
  Type lab = Type::list(kAB);
  SubsetSpec all = characteristic_subset(Term::constant(bool_value(true), lab, bool_type()));
  SubsetSpec nonempty = characteristic_subset(stdlib::is_nonempty(kAB));
  for (const auto& v : enumerate_values_upto(lab, 7)) {
    CHECK(all.contains(v));
    CHECK(nonempty.contains(v) == !v.items().empty());
  }
  CHECK_THROWS_AS(characteristic_subset(Term::reverse(kAB)), TypeError);
}

TEST_CASE("guarded terms check their domain") {
  Term g = Term::guarded(Term::reverse(kAB), stdlib::is_nonempty(kAB), stdlib::is_nonempty(kAB));
  CHECK(eval(g, val("[a,b]", "{a,b}*")) == val("[b,a]", "{a,b}*"));
  CHECK_THROWS_AS(eval(g, Value::list({})), EvalError);
}

TEST_CASE("evaluation is type sound and agrees with the definitions") {
  std::size_t checked = 0;
  for (const auto& c : testing::basic_panel()) {
    INFO(c.name);
    REQUIRE(c.term.well_typed());
    for (const auto& v : enumerate_values_upto(c.term.dom(), 8)) {
      Value out = eval(c.term, v);
      REQUIRE(check_value(out, c.term.cod()));
      REQUIRE(out == c.oracle(v));
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("block output alternates and flattens back") {
  Term b = Term::block(kAB, kCD);
  for (const auto& x : enumerate_values_upto(Type::list(ty("{a,b,c,d}")), 9)) {
    Value runs = eval(b, x);
    std::vector<Value> flat;
    for (std::size_t i = 0; i < runs.items().size(); ++i) {
      const Value& r = runs.items()[i];
      REQUIRE_FALSE(r.inner().items().empty());
      if (i > 0) REQUIRE(r.kind() != runs.items()[i - 1].kind());
      for (const auto& y : r.inner().items()) flat.push_back(y);
    }
    REQUIRE(Value::list(flat) == x);
  }
}

TEST_CASE("reverse is an involution; append inverts coappend") {
  Term r = Term::reverse(kAB);
  Term a = Term::append(kAB), c = Term::coappend(kAB);
  for (const auto& x : enumerate_values_upto(Type::list(kAB), 9)) {
    REQUIRE(eval(r, eval(r, x)) == x);
    if (!x.items().empty()) REQUIRE(eval(a, unwrap(eval(c, x))) == x);
  }
}

TEST_CASE("term syntax") {
  Term t = parse_term("(compose flat@{a} (map reverse@{a}))");
  CHECK(t.dom() == ty("{a}**"));
  CHECK(parse_term(render_term(t)).dom() == t.dom());
  for (const char* s : {"proj1@{a},{b}", "proj2@{a},{b}", "inlco@{a},{b}", "inrco@{a},{b}", "dist@{a},{b},{c}",
                        "coappend@{a}", "block@{a}+{b}", "(const [] : {a} -> {a}*)", "(gprefix Z2)",
                        "(pair reverse@{a} flat@{a}*)", "(union reverse@{a} (const [] : {b} -> {a}*))",
                        "(guard reverse@{a} (std:is_nonempty {a}) (std:is_nonempty {a}))"}) {
    INFO(s);
    Term u = parse_term(s);
    CHECK(u.well_typed() == (std::string(s).find("flat@{a}*") == std::string::npos));
    Term back = parse_term(render_term(u));
    CHECK(render_term(back) == render_term(u));
  }
  CHECK_THROWS_AS(parse_term("(compose flat@{a}"), SyntaxError);
  CHECK_THROWS_AS(parse_term("frobnicate@{a}"), SyntaxError);
  CHECK_THROWS_AS(parse_term("(gprefix NOPE)"), SyntaxError);
}
