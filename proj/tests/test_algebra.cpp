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
#include "listfn/algebra.hpp"
#include "listfn/error.hpp"
#include "listfn/random.hpp"
#include "support.hpp"

using namespace listfn;

namespace {

// Addition on {0..n} saturating at n: aperiodic with index n.
FiniteMonoid saturating(int n) {
  std::vector<std::string> names;
  std::vector<int> table;
  for (int i = 0; i <= n; ++i) names.push_back(std::to_string(i));
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) table.push_back(std::min(a + b, n));
  return FiniteMonoid(names, table, 0);
}

// {1, r, s} with xy = y for x, y in {r, s}.
FiniteMonoid flip_flop() { return FiniteMonoid({"1", "r", "s"}, {0, 1, 2, 1, 1, 2, 2, 1, 2}, 0); }

int fold(const FiniteSemigroup& s, const std::vector<int>& xs) {
  int acc = xs.at(0);
  for (std::size_t i = 1; i < xs.size(); ++i) acc = s.mult(acc, xs[i]);
  return acc;
}

// Least n with m^n = m^(n+1) for every m, by listing powers.
std::optional<int> brute_index(const FiniteSemigroup& s) {
  for (int n = 1; n <= s.size() + 1; ++n) {
    bool ok = true;
    for (int m = 0; m < s.size() && ok; ++m) {
      int p = m;
      for (int i = 1; i < n; ++i) p = s.mult(p, m);
      ok = p == s.mult(p, m);
    }
    if (ok) return n;
  }
  return std::nullopt;
}

// The factorisation constraints, restated.
bool constraints_hold(const Homomorphism& h, const FactTree& t) {
  if (t.is_leaf()) return false;
  bool leaf_parent = t.children.size() == 1 && t.children[0].is_leaf();
  if (leaf_parent) return t.label == h.image[static_cast<std::size_t>(t.children[0].letter)];
  if (t.children.size() < 2) return false;
  std::vector<int> labels;
  for (const auto& c : t.children) {
    if (c.is_leaf() || !constraints_hold(h, c)) return false;
    labels.push_back(c.label);
  }
  if (fold(h.target, labels) != t.label) return false;
  if (labels.size() >= 3)
    for (int l : labels)
      if (l != labels[0]) return false;
  return true;
}

std::vector<Homomorphism> forest_panel() {
  std::vector<Homomorphism> hs;
  hs.emplace_back(std::vector<std::string>{"a", "b"}, std::vector<int>{0, 1}, monoids::u1());
  FiniteMonoid cab = monoids::contains_ab();
  hs.emplace_back(std::vector<std::string>{"a", "b"}, std::vector<int>{cab.index_of("a"), cab.index_of("b")}, cab);
  hs.emplace_back(std::vector<std::string>{"a", "b", "c"}, std::vector<int>{1, 2, 0}, flip_flop());
  hs.emplace_back(std::vector<std::string>{"a", "b"}, std::vector<int>{0, 1}, saturating(3));
  FiniteSemigroup left_zero({"l1", "l2"}, {0, 0, 1, 1});
  hs.emplace_back(std::vector<std::string>{"a", "b"}, std::vector<int>{0, 1}, left_zero);
  return hs;
}

}  // namespace

TEST_CASE("tables are validated") {
  CHECK_THROWS(FiniteSemigroup({"x", "y"}, {0, 1, 1}));
  CHECK_THROWS(FiniteSemigroup({"x", "y"}, {1, 0, 0, 0}));  // (xx)y = y != x = x(xy)
  CHECK_THROWS(FiniteMonoid({"e", "x"}, {1, 1, 1, 1}, 0));
  CHECK_NOTHROW(flip_flop());
}

TEST_CASE("aperiodicity index") {
  CHECK(monoids::u1().aperiodicity_index() == 1);
  CHECK_FALSE(monoids::cyclic(2).aperiodicity_index().has_value());
  CHECK_FALSE(monoids::cyclic(3).is_aperiodic());
  FiniteMonoid cab = monoids::contains_ab();
  CHECK(cab.aperiodicity_index() == brute_index(cab));
  CHECK(*cab.aperiodicity_index() <= 2);
  CHECK(saturating(3).aperiodicity_index() == 3);
  CHECK(flip_flop().aperiodicity_index() == brute_index(flip_flop()));
}

TEST_CASE("contains-ab monoid recognises its language") {
  FiniteMonoid cab = monoids::contains_ab();
  Homomorphism h({"a", "b"}, {cab.index_of("a"), cab.index_of("b")}, cab);
  std::vector<int> acc{cab.index_of("z")};
  auto member = [&](const std::string& w) { return regular_membership(h, acc, false, h.letters(testing::letters(w))); };
  CHECK(member("ab"));
  CHECK_FALSE(member("ba"));
  CHECK_FALSE(member(""));
  CHECK(regular_membership(h, acc, true, {}));
  for (const auto& w : testing::all_words({"a", "b"}, 10)) {
    std::string s = join_word(w);
    REQUIRE(regular_membership(h, acc, false, h.letters(w)) == (s.find("ab") != std::string::npos));
  }
}

TEST_CASE("variadic product splits anywhere") {
  std::mt19937_64 rng(9);
  FiniteMonoid cab = monoids::contains_ab();
  for (int i = 0; i < 300; ++i) {
    std::size_t n = gen::uniform(rng, 1, 40);
    std::vector<int> xs;
    for (std::size_t j = 0; j < n; ++j) xs.push_back(static_cast<int>(gen::uniform(rng, 0, 4)));
    std::size_t cut = gen::uniform(rng, 0, n);
    std::vector<int> l(xs.begin(), xs.begin() + static_cast<long>(cut)), r(xs.begin() + static_cast<long>(cut), xs.end());
    CHECK(cab.mult(cab.product(l), cab.product(r)) == cab.product(xs));
  }
  CHECK(cab.product(std::vector<int>{}) == cab.identity());
}

TEST_CASE("small factorisations") {
  Homomorphism h({"a", "b"}, {0, 1}, monoids::u1());
  FactTree one = build_factorisation(h, testing::letters("a"));
  REQUIRE(one.children.size() == 1);
  CHECK(one.label == 0);
  CHECK(one.children[0].is_leaf());
  CHECK(one.children[0].letter == 0);
  Word w = testing::letters("aaaaabaaa");
  FactTree t = build_factorisation(h, w);
  CHECK(validate_factorisation(h, t).ok);
  CHECK(tree_yield(t) == h.letters(w));
  CHECK(eval_hom_via_forest(h, h.letters(testing::letters("ab"))) == 1);
  CHECK_THROWS(build_factorisation(h, Word{}));
  Homomorphism z2({"a"}, {1}, monoids::cyclic(2));
  CHECK_THROWS_AS(build_factorisation(z2, testing::letters("aa")), NotAperiodic);
}

TEST_CASE("validator rejects broken trees") {
  Homomorphism h({"a", "b"}, {0, 1}, monoids::u1());
  FactTree wrong_leaf = FactTree::node(1, {FactTree::leaf(0)});
  CHECK_FALSE(validate_factorisation(h, wrong_leaf).ok);
  auto lp = [](int label, int letter) { return FactTree::node(label, {FactTree::leaf(letter)}); };
  FactTree unequal = FactTree::node(1, {lp(0, 0), lp(1, 1), lp(0, 0)});
  Validation v = validate_factorisation(h, unequal);
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.violation.empty());
  FactTree bad_product = FactTree::node(0, {lp(0, 0), lp(1, 1)});
  CHECK_FALSE(validate_factorisation(h, bad_product).ok);
  FactTree good = FactTree::node(1, {lp(0, 0), lp(1, 1)});
  CHECK(validate_factorisation(h, good).ok);
  FactTree leaf_with_sibling = FactTree::node(1, {FactTree::leaf(0), lp(1, 1)});
  CHECK_FALSE(validate_factorisation(h, leaf_with_sibling).ok);
}

TEST_CASE("factorisations are valid with bounded depth") {
  for (const auto& h : forest_panel()) {
    std::uint64_t bound = forest_depth_bound(h.target);
    std::size_t deepest_short = 0, deepest_long = 0;
    for (std::uint64_t i = 0; i < 300; ++i) {
      std::mt19937_64 rng(gen::case_seed(17, i));
      bool is_long = i % 2 == 1;
      std::size_t n = is_long ? 300 : 30;
      Word w = gen::random_word(h.alphabet, n, rng);
      auto letters = h.letters(w);
      FactTree t = build_factorisation(h, letters);
      REQUIRE(validate_factorisation(h, t).ok);
      REQUIRE(constraints_hold(h, t));
      REQUIRE(tree_yield(t) == letters);
      REQUIRE(tree_depth(t) <= bound);
      std::vector<int> images;
      for (int a : letters) images.push_back(h.image[static_cast<std::size_t>(a)]);
      REQUIRE(eval_hom_via_forest(h, letters) == fold(h.target, images));
      std::size_t& deepest = is_long ? deepest_long : deepest_short;
      deepest = std::max(deepest, tree_depth(t));
    }
    INFO(h.target.size());
    CHECK(deepest_long <= bound);
    CHECK(deepest_short <= bound);
  }
}

TEST_CASE("exhaustive short words") {
  for (const auto& h : forest_panel())
    for (const auto& w : testing::all_words(h.alphabet, 9)) {
      if (w.empty()) continue;
      auto letters = h.letters(w);
      FactTree t = build_factorisation(h, letters);
      REQUIRE(constraints_hold(h, t));
      REQUIRE(tree_yield(t) == letters);
    }
}

TEST_CASE("depth bounds") {
  CHECK(forest_depth_bound(FiniteMonoid({"1"}, {0}, 0)) >= 1);
  CHECK(forest_depth_bound(monoids::u1()) >= forest_depth_bound(FiniteMonoid({"1"}, {0}, 0)));
  CHECK_THROWS_AS(forest_depth_bound(monoids::cyclic(2)), NotAperiodic);
}
