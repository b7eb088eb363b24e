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
#include <functional>

#include "doctest.h"
#include "listfn/error.hpp"
#include "listfn/random.hpp"
#include "listfn/rational.hpp"
#include "listfn/registers.hpp"
#include "listfn/sst.hpp"
#include "support.hpp"

using namespace listfn;

namespace {

const std::vector<std::string> kGamma = {"a", "b"};
const FreeMonoid kFree{{"a", "b"}};

WordUpdate upd(const std::string& text, std::size_t k) { return parse_word_update(text, k); }

// Register i holds the fresh letter <i>; the image of this valuation pins an update down.
RegValuation<Word> symbolic(std::size_t k) {
  RegValuation<Word> v;
  for (std::size_t i = 0; i < k; ++i) v.push_back({"<" + std::to_string(i + 1) + ">"});
  return v;
}

// Plain substitution, written independently of the library's action.
template <class E, class Mul>
std::vector<E> substitute(const std::vector<E>& v, const RegUpdate<E>& u, E one, Mul mul) {
  std::vector<E> out;
  for (const auto& r : u.rhs) {
    E acc = one;
    for (const auto& s : r) acc = mul(acc, s.reg >= 0 ? v[static_cast<std::size_t>(s.reg)] : s.elem);
    out.push_back(acc);
  }
  return out;
}

Word cat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

RegValuation<Word> step_all(RegValuation<Word> v, const std::vector<WordUpdate>& us) {
  for (const auto& u : us) v = substitute<Word>(v, u, Word{}, cat);
  return v;
}

void require_same_action(const WordUpdate& got, const std::vector<WordUpdate>& us, std::size_t k,
                         std::mt19937_64& rng) {
  REQUIRE(got.k() == k);
  REQUIRE(substitute<Word>(symbolic(k), got, Word{}, cat) == step_all(symbolic(k), us));
  RegValuation<Word> probe = gen::random_valuation(k, kGamma, rng);
  REQUIRE(apply_update(kFree, probe, got) == step_all(probe, us));
  REQUIRE(got == normalise(kFree, got));
}

FiniteMonoid flip_flop() { return FiniteMonoid({"1", "r", "s"}, {0, 1, 2, 1, 1, 2, 2, 1, 2}, 0); }

RegUpdate<int> random_elem_update(const FiniteMonoid& m, std::size_t k, std::mt19937_64& rng) {
  auto all = enumerate_abstractions(k);
  const Abstraction& tau = all[gen::uniform(rng, 0, all.size() - 1)];
  RegUpdate<int> u;
  for (const auto& regs : tau.rhs) {
    Rhs<int> r;
    auto lit = [&] {
      if (gen::uniform(rng, 0, 1)) r.push_back(RegSym<int>::m(static_cast<int>(gen::uniform(rng, 0, m.size() - 1))));
    };
    lit();
    for (int j : regs) {
      r.push_back(RegSym<int>::r(j));
      lit();
    }
    u.rhs.push_back(std::move(r));
  }
  return u;
}

}  // namespace

TEST_CASE("nonduplicating and monotone") {
  WordUpdate good = upd("1 := [\"m\", $1] | 2 := [$2]", 2);
  CHECK(is_nonduplicating(good));
  CHECK(is_monotone(good));
  CHECK_FALSE(is_nonduplicating(upd("1 := [$1, $1]", 1)));
  CHECK_FALSE(is_monotone(upd("1 := [$2] | 2 := [$1]", 2)));
  CHECK(is_nonduplicating(upd("1 := [$2] | 2 := [$1]", 2)));
}

TEST_CASE("update syntax") {
  WordUpdate u = upd("1 := [\"ab\", $2] | 2 := []", 2);
  CHECK(render_word_update(u) == "1 := [\"ab\", $2] | 2 := []");
  CHECK(upd(render_word_update(u), 2) == u);
  CHECK(upd("", 3) == identity_update(kFree, 3));
  CHECK(upd("2 := [\"b\"]", 2).rhs[0] == Rhs<Word>{RegSym<Word>::r(0)});
  CHECK(parse_literal("ab") == Word{"a", "b"});
  CHECK(parse_literal("x1 y2") == Word{"x1", "y2"});
  CHECK(parse_literal(render_literal(Word{"x1"})) == Word{"x1"});
  CHECK_THROWS_AS(upd("3 := []", 2), SyntaxError);
  CHECK_THROWS_AS(upd("1 := [$1] | 1 := []", 2), SyntaxError);
  CHECK_THROWS_AS(upd("1 := [ab]", 1), SyntaxError);
  CHECK_THROWS_AS(upd("1 := [$1] extra", 1), SyntaxError);
}

TEST_CASE("apply update") {
  FiniteMonoid ff = flip_flop();
  FiniteMonoidRef m{&ff};
  int r = ff.index_of("r"), s = ff.index_of("s");
  RegUpdate<int> eta{{{RegSym<int>::m(s), RegSym<int>::r(0)}, {RegSym<int>::r(1), RegSym<int>::m(r)}}};
  for (int m1 = 0; m1 < 3; ++m1)
    for (int m2 = 0; m2 < 3; ++m2)
      CHECK(apply_update(m, {m1, m2}, eta) == RegValuation<int>{ff.mult(s, m1), ff.mult(m2, r)});
  CHECK(apply_update(m, {r, s}, identity_update(m, 2)) == RegValuation<int>{r, s});
  CHECK(apply_update(kFree, empty_valuation(kFree, 2), upd("1 := [\"ab\", $2] | 2 := []", 2)) ==
        RegValuation<Word>{{"a", "b"}, {}});
}

TEST_CASE("update product") {
  WordUpdate u1 = upd("1 := [\"a\", $1] | 2 := [$2, \"b\"]", 2);
  WordUpdate u2 = upd("1 := [$1, $2] | 2 := [\"ab\"]", 2);
  CHECK(update_product(kFree, u1, identity_update(kFree, 2)) == u1);
  CHECK(update_product(kFree, identity_update(kFree, 2), u1) == u1);
  CHECK(update_product(kFree, u1, u2) == upd("1 := [\"a\", $1, $2, \"b\"] | 2 := [\"ab\"]", 2));
  CHECK(fold_updates(kFree, {}, 2) == identity_update(kFree, 2));
}

TEST_CASE("action compatibility and associativity") {
  std::mt19937_64 rng(5);
  FiniteMonoid ff = flip_flop(), cab = monoids::contains_ab();
  for (int i = 0; i < 400; ++i) {
    std::size_t k = 1 + static_cast<std::size_t>(i % 4);
    WordUpdate a = gen::random_update(k, kGamma, rng), b = gen::random_update(k, kGamma, rng),
               c = gen::random_update(k, kGamma, rng);
    RegValuation<Word> v = gen::random_valuation(k, kGamma, rng);
    REQUIRE(apply_update(kFree, v, update_product(kFree, a, b)) == apply_update(kFree, apply_update(kFree, v, a), b));
    REQUIRE(update_product(kFree, update_product(kFree, a, b), c) ==
            update_product(kFree, a, update_product(kFree, b, c)));
    for (const FiniteMonoid* fm : {&ff, &cab}) {
      FiniteMonoidRef m{fm};
      auto x = random_elem_update(*fm, k, rng), y = random_elem_update(*fm, k, rng);
      RegValuation<int> w;
      for (std::size_t j = 0; j < k; ++j) w.push_back(static_cast<int>(gen::uniform(rng, 0, fm->size() - 1)));
      auto mul = [fm](int p, int q) { return fm->mult(p, q); };
      REQUIRE(apply_update(m, w, update_product(m, x, y)) ==
              substitute<int>(substitute<int>(w, x, fm->identity(), mul), y, fm->identity(), mul));
    }
  }
}

TEST_CASE("abstraction") {
  Word mw{"m"}, mp{"b"};
  WordUpdate u{{{RegSym<Word>::m(mw), RegSym<Word>::r(0), RegSym<Word>::m(mp), RegSym<Word>::r(1)}, {}}};
  CHECK(abstraction(u) == Abstraction{{{0, 1}, {}}});
  CHECK(abstraction(identity_update(kFree, 3)) == identity_abstraction(3));

  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    std::size_t k = 1 + static_cast<std::size_t>(i % 4);
    WordUpdate a = gen::random_update(k, kGamma, rng), b = gen::random_update(k, kGamma, rng);
    Abstraction ab = abstraction(update_product(kFree, a, b));
    REQUIRE(ab == abstraction_product(abstraction(a), abstraction(b)));
    WordUpdate a2 = gen::random_update_like(abstraction(a), kGamma, rng);
    WordUpdate b2 = gen::random_update_like(abstraction(b), kGamma, rng);
    REQUIRE(abstraction(update_product(kFree, a2, b2)) == ab);
    WordUpdate p = update_product(kFree, a, b);
    REQUIRE(is_nonduplicating(p));
    REQUIRE(is_monotone(p));
  }
}

TEST_CASE("abstractions form a closed monoid") {
  for (std::size_t k = 1; k <= 3; ++k) {
    auto all = enumerate_abstractions(k);
    std::set<Abstraction> set(all.begin(), all.end());
    REQUIRE(set.size() == all.size());
    REQUIRE(set.count(identity_abstraction(k)));
    // brute force: every nonduplicating monotone skeleton appears
    std::size_t brute = 0;
    std::vector<int> target(k, -1);
    std::function<void(std::size_t)> go = [&](std::size_t j) {
      if (j == k) {
        Abstraction a;
        a.rhs.assign(k, {});
        for (std::size_t r = 0; r < k; ++r)
          if (target[r] >= 0) a.rhs[static_cast<std::size_t>(target[r])].push_back(static_cast<int>(r));
        if (is_monotone(a)) {
          ++brute;
          REQUIRE(set.count(a));
        }
        return;
      }
      for (int t = -1; t < static_cast<int>(k); ++t) {
        target[j] = t;
        go(j + 1);
      }
    };
    go(0);
    REQUIRE(brute == all.size());
    for (const auto& x : all)
      for (const auto& y : all) REQUIRE(set.count(abstraction_product(x, y)));
  }
}

TEST_CASE("dependency graphs") {
  Abstraction t{{{0, 1}, {}}};
  CHECK(temporary_registers(t) == std::set<int>{1});
  CHECK(temporary_registers(identity_abstraction(3)).empty());
  CHECK(temporary_registers(Abstraction{{{}, {}, {}}}) == std::set<int>{0, 1, 2});
  CHECK(dependency_graph(t) == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}});
  CHECK(register_components(t) == std::vector<std::vector<int>>{{0, 1}});
  CHECK(register_components(Abstraction{{{0}, {}, {1, 2}}}) == std::vector<std::vector<int>>{{0}, {1, 2}});

  for (std::size_t k = 1; k <= 3; ++k)
    for (const auto& a : enumerate_abstractions(k)) {
      std::map<int, int> succ;  // j -> i for the edge i <- j
      for (const auto& [i, j] : dependency_graph(a)) REQUIRE(succ.emplace(j, i).second);
      for (int start = 0; start < static_cast<int>(k); ++start) {
        int x = start;
        for (std::size_t steps = 0; steps <= k && succ.count(x); ++steps) {
          int next = succ[x];
          if (next == start && steps > 0) REQUIRE(next == x);
          if (next == x) break;
          x = next;
        }
      }
    }
}

TEST_CASE("leftsub and rightsub") {
  Word s{"s"}, s2{"z"}, t{"t"};
  WordUpdate u{{{RegSym<Word>::m(s), RegSym<Word>::r(0), RegSym<Word>::m(t)}}};
  CHECK(leftsub(u) == std::vector<Word>{s});
  CHECK(rightsub(u) == std::vector<Word>{t});
  WordUpdate id = identity_update(kFree, 1);
  CHECK(leftsub(id).empty());
  CHECK(rightsub(id).empty());
  WordUpdate v{{{RegSym<Word>::m(s), RegSym<Word>::m(s2), RegSym<Word>::r(0)}}};
  CHECK(leftsub(v) == std::vector<Word>{s, s2});
  CHECK(rightsub(v).empty());
  CHECK_THROWS_AS(leftsub(WordUpdate{{{RegSym<Word>::m(s)}}}), TypeError);
  CHECK_THROWS_AS(leftsub(identity_update(kFree, 2)), TypeError);
}

TEST_CASE("one-register homogeneous products") {
  Abstraction keep{{{0}}}, drop{{{}}};
  auto one = [](const std::string& l, const std::string& r) {
    return WordUpdate{{{RegSym<Word>::m(Word{l}), RegSym<Word>::r(0), RegSym<Word>::m(Word{r})}}};
  };
  WordUpdate got = homogeneous_product_1reg(kFree, {one("p", "q"), one("x", "y")}, keep);
  WordUpdate want{{{RegSym<Word>::m(Word{"x", "p"}), RegSym<Word>::r(0), RegSym<Word>::m(Word{"q", "y"})}}};
  CHECK(got == want);
  std::vector<WordUpdate> ds = {upd("1 := [\"a\"]", 1), upd("1 := [\"bb\"]", 1), upd("1 := []", 1)};
  CHECK(homogeneous_product_1reg(kFree, ds, drop) == ds.back());
  CHECK_THROWS_AS(homogeneous_product_1reg(kFree, {one("p", "q"), ds[0]}, keep), EvalError);
  CHECK_THROWS_AS(homogeneous_product_1reg(kFree, {}, keep), EvalError);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const Abstraction& tau = i % 3 ? keep : drop;
    std::vector<WordUpdate> us;
    for (std::size_t n = gen::uniform(rng, 1, 50); n > 0; --n) us.push_back(gen::random_update_like(tau, kGamma, rng));
    require_same_action(homogeneous_product_1reg(kFree, us, tau), us, 1, rng);
  }
}

TEST_CASE("prefix products with temporary registers") {
  std::mt19937_64 rng(17);
  std::vector<Abstraction> temps;
  for (std::size_t k = 1; k <= 4; ++k)
    for (const auto& a : enumerate_abstractions(k))
      if (temporary_registers(a).size() == k) temps.push_back(a);
  REQUIRE(!temps.empty());
  for (int i = 0; i < 300; ++i) {
    const Abstraction& tau = temps[gen::uniform(rng, 0, temps.size() - 1)];
    std::vector<WordUpdate> us;
    for (std::size_t n = gen::uniform(rng, 1, 30); n > 0; --n) us.push_back(gen::random_update_like(tau, kGamma, rng));
    auto pre = prefix_products_temporary(kFree, us);
    REQUIRE(pre.size() == us.size());
    for (std::size_t j = 0; j < us.size(); ++j) {
      std::vector<WordUpdate> prefix(us.begin(), us.begin() + static_cast<std::ptrdiff_t>(j + 1));
      if (j < tau.k()) REQUIRE(pre[j] == fold_updates(kFree, prefix, tau.k()));
      for (int p = 0; p < 10; ++p) {
        RegValuation<Word> v = gen::random_valuation(tau.k(), kGamma, rng);
        REQUIRE(apply_update(kFree, v, pre[j]) == step_all(v, prefix));
      }
    }
  }
  Abstraction drop{{{}}};
  std::vector<WordUpdate> ds = {upd("1 := [\"a\"]", 1), upd("1 := [\"b\"]", 1)};
  CHECK(prefix_products_temporary(kFree, ds).back() == ds.back());
  CHECK_THROWS_AS(prefix_products_temporary(kFree, {identity_update(kFree, 1)}), EvalError);
}

TEST_CASE("homogeneous products") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 500; ++i) {
    std::size_t k = 1 + static_cast<std::size_t>(i % 4);
    auto all = enumerate_abstractions(k);
    const Abstraction& tau = all[gen::uniform(rng, 0, all.size() - 1)];
    std::vector<WordUpdate> us;
    for (std::size_t n = gen::uniform(rng, 1, 60); n > 0; --n) us.push_back(gen::random_update_like(tau, kGamma, rng));
    WordUpdate got = homogeneous_product(kFree, us, tau);
    require_same_action(got, us, k, rng);
    if (temporary_registers(tau).size() == k && us.size() > k) {
      std::vector<WordUpdate> last(us.end() - static_cast<std::ptrdiff_t>(k), us.end());
      REQUIRE(got == fold_updates(kFree, last, k));
    }
  }
  WordUpdate single = upd("1 := [\"a\", $1] | 2 := [\"b\"]", 2);
  CHECK(homogeneous_product(kFree, {single}, abstraction(single)) == single);
  CHECK_THROWS_AS(homogeneous_product(kFree, {single, identity_update(kFree, 2)}, abstraction(single)), EvalError);
}

TEST_CASE("products of update lists") {
  CHECK(product_list_updates(kFree, {}, 3) == identity_update(kFree, 3));
  WordUpdate u = upd("1 := [\"a\", $1, $2] | 2 := [\"b\"]", 2);
  CHECK(product_list_updates(kFree, {u}, 2) == u);
  CHECK_THROWS_AS(product_list_updates(kFree, {upd("1 := [$1, $1]", 1)}, 1), TypeError);
  CHECK_THROWS_AS(product_list_updates(kFree, {upd("1 := [$2] | 2 := [$1]", 2)}, 2), TypeError);
  CHECK_THROWS_AS(product_list_updates(kFree, {u}, 3), TypeError);
  CHECK_THROWS_AS(product_list_updates(FreeMonoid{{"a"}}, {u}, 2), TypeError);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    std::size_t k = 1 + static_cast<std::size_t>(i % 4);
    auto us = gen::random_updates(k, gen::uniform(rng, 0, 200), kGamma, rng);
    require_same_action(product_list_updates(kFree, us, k), us, k, rng);
  }
  FiniteMonoid ff = flip_flop();
  FiniteMonoidRef m{&ff};
  for (int i = 0; i < 200; ++i) {
    std::size_t k = 1 + static_cast<std::size_t>(i % 3);
    std::vector<RegUpdate<int>> us;
    for (std::size_t n = gen::uniform(rng, 0, 100); n > 0; --n) us.push_back(random_elem_update(ff, k, rng));
    RegValuation<int> v(k, ff.identity());
    for (std::size_t j = 0; j < k; ++j) v[j] = static_cast<int>(gen::uniform(rng, 0, 2));
    auto mul = [&ff](int p, int q) { return ff.mult(p, q); };
    RegValuation<int> want = v;
    for (const auto& x : us) want = substitute<int>(want, x, ff.identity(), mul);
    REQUIRE(apply_update(m, v, product_list_updates(m, us, k)) == want);
  }
}

TEST_CASE("update sequences from the empty valuation") {
  CHECK(apply_update_sequence(kFree, {}, 2) == RegValuation<Word>{{}, {}});
  CHECK(apply_update_sequence(kFree, {upd("1 := [\"ab\"]", 2)}, 2) == RegValuation<Word>{{"a", "b"}, {}});
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    std::size_t k = 1 + static_cast<std::size_t>(i % 4);
    auto us = gen::random_updates(k, gen::uniform(rng, 0, 80), kGamma, rng);
    REQUIRE(apply_update_sequence(kFree, us, k) == step_all(empty_valuation(kFree, k), us));
  }
}

TEST_CASE("rational function followed by updates") {
  // g is the letter-to-letter identity on {a,b}; the update letters are a and b.
  FiniteMonoid triv({"1"}, {0}, 0);
  RationalFn g({"a", "b"}, {"a", "b"}, triv, {0, 0}, {Word{"a"}, Word{"b"}});
  std::map<std::string, WordUpdate> ids = {{"a", identity_update(kFree, 1)}, {"b", identity_update(kFree, 1)}};
  std::map<std::string, WordUpdate> app = {{"a", upd("1 := [$1, \"a\"]", 1)}, {"b", upd("1 := [$1, \"b\"]", 1)}};
  std::map<std::string, WordUpdate> pre = {{"a", upd("1 := [\"a\", $1]", 1)}, {"b", upd("1 := [\"b\", $1]", 1)}};
  for (const auto& w : testing::all_words(kGamma, 7)) {
    REQUIRE(fot_pipeline_eval(g, ids, 1, w).empty());
    REQUIRE(fot_pipeline_eval(g, app, 1, w) == w);
    REQUIRE(fot_pipeline_eval(g, pre, 1, w) == Word(w.rbegin(), w.rend()));
  }
  std::map<std::string, WordUpdate> partial = {{"a", ids["a"]}};
  CHECK_THROWS_AS(fot_pipeline_eval(g, partial, 1, testing::letters("ab")), EvalError);
}
