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

#ifndef LISTFN_TESTS_PANELS_HPP
#define LISTFN_TESTS_PANELS_HPP

#include <functional>
#include <string>
#include <vector>

#include "listfn/stdlib.hpp"
#include "listfn/term.hpp"
#include "listfn/term_syntax.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace testing {

struct Case {
  std::string name;
  listfn::Term term;
  std::function<listfn::Value(const listfn::Value&)> oracle;
};

// Every basic function and combinator over two-letter atoms.
inline std::vector<Case> basic_panel() {
  using listfn::Term;
  using listfn::Value;
  listfn::Type ab = ty("{a,b}"), cd = ty("{c,d}"), lab = ty("{a,b}*");
  auto by_oracle = [](const Term& t) { return [t](const Value& v) { return oracle::interpret(t, v); }; };
  std::vector<Case> out;
  auto add = [&](std::string name, Term t) { out.push_back({std::move(name), t, by_oracle(t)}); };
  add("proj1", Term::proj1(ab, lab));
  add("proj2", Term::proj2(ab, lab));
  add("inlco", Term::coproj_l(ab, cd));
  add("inrco", Term::coproj_r(ab, cd));
  add("inlco-tagged", Term::coproj_l(lab, cd));
  add("inrco-tagged", Term::coproj_r(lab, cd));
  add("dist", Term::distribute(ab, cd, lab));
  add("dist-tagged", Term::distribute(lab, cd, ab));
  add("reverse", Term::reverse(ab));
  add("flat", Term::flat(ab));
  add("append", Term::append(ab));
  add("coappend", Term::coappend(ab));
  add("block", Term::block(ab, cd));
  add("block-tagged", Term::block(lab, cd));
  add("const", Term::constant(val("[a,b]", lab), lab, lab));
  add("compose", Term::compose(Term::flat(ab), Term::map(Term::reverse(ab))));
  add("map", Term::map(Term::coappend(ab)));
  add("pair", Term::pair(Term::reverse(ab), Term::coappend(ab)));
  add("union", Term::union_of(Term::reverse(ab), Term::constant(val("[b]", lab), cd, lab)));
  add("union-flat", Term::union_of(Term::constant(val("a", ab), ab, ab), Term::constant(val("b", ab), cd, ab)));
  add("gprefix-Z2", Term::prefix_group(listfn::GroupSpec::cyclic(2)));
  add("gprefix-Z3", Term::prefix_group(listfn::GroupSpec::cyclic(3)));
  return out;
}

// Every library constructor, each with an oracle from oracles.hpp.
inline std::vector<Case> std_panel() {
  namespace S = listfn::stdlib;
  using listfn::Term;
  using listfn::Value;
  listfn::Type ab = ty("{a,b}"), cd = ty("{c,d}"), xy = ty("{x,y}"), hash = ty("{#}");
  Value c = val("a", ab);
  std::vector<Case> out;
  out.push_back({"identity", S::identity(ty("{a,b}*")), [](const Value& v) { return v; }});
  out.push_back({"unit", S::unit(ab), [](const Value& v) { return Value::list({v}); }});
  out.push_back({"finite_function",
                 S::finite_function(ab, xy, {{val("a", ab), val("y", xy)}, {val("b", ab), val("x", xy)}}),
                 [](const Value& v) { return Value::sym(v.name() == "a" ? "y" : "x"); }});
  out.push_back({"head", S::head(ab), oracle::head});
  out.push_back({"tail", S::tail(ab), oracle::tail});
  out.push_back({"last", S::last(ab), oracle::last});
  out.push_back({"len_upto-0", S::len_upto(0, ab), [](const Value& v) { return oracle::len_upto(0, v); }});
  out.push_back({"len_upto-2", S::len_upto(2, ab), [](const Value& v) { return oracle::len_upto(2, v); }});
  out.push_back({"len_upto-3", S::len_upto(3, ab), [](const Value& v) { return oracle::len_upto(3, v); }});
  out.push_back({"filter_left", S::filter_left(ab, cd), [=](const Value& v) { return oracle::filter_left(ab, cd, v); }});
  listfn::Type lab = ty("{a,b}*");
  out.push_back({"filter_left-tagged", S::filter_left(lab, cd),
                 [=](const Value& v) { return oracle::filter_left(lab, cd, v); }});
  out.push_back({"comma", S::comma(ab, hash), [=](const Value& v) { return oracle::comma(ab, hash, v); }});
  out.push_back({"comma-tagged", S::comma(lab, hash), [=](const Value& v) { return oracle::comma(lab, hash, v); }});
  out.push_back({"pair_to_list", S::pair_to_list(ab), oracle::pair_to_list});
  out.push_back({"list_to_pair", S::list_to_pair(ab, c), [=](const Value& v) { return oracle::list_to_pair(v, c); }});
  out.push_back({"concat", S::concat(ab), oracle::concat});
  out.push_back({"windows-2", S::windows(2, ab), [](const Value& v) { return oracle::windows(2, v); }});
  out.push_back({"windows-3", S::windows(3, ab), [](const Value& v) { return oracle::windows(3, v); }});
  out.push_back({"is_empty", S::is_empty(ab), [](const Value& v) { return oracle::boolean(v.items().empty()); }});
  out.push_back({"is_nonempty", S::is_nonempty(ab), [](const Value& v) { return oracle::boolean(!v.items().empty()); }});
  Term g0 = Term::reverse(ab), g1 = S::identity(lab), f = S::is_empty(ab);
  out.push_back({"if_then_else", S::if_then_else(f, g0, g1),
                 [](const Value& v) { return v.items().empty() ? v : oracle::reverse(v); }});
  Term u = S::unit(ab);
  out.push_back({"lift_plus", S::lift_plus(u), [](const Value& v) {
                   std::vector<Value> ys;
                   for (const auto& y : v.snd().items()) ys.push_back(Value::list({y}));
                   return Value::pair(Value::list({v.fst()}), Value::list(ys));
                 }});
  return out;
}

// Catalog name of a std_panel case.
inline std::string catalog_name(const std::string& case_name) {
  auto dash = case_name.find('-');
  return case_name.substr(0, dash);
}

}  // namespace testing

#endif  // LISTFN_TESTS_PANELS_HPP
