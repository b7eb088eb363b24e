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
#include "listfn/formats.hpp"
#include "listfn/random.hpp"
#include "listfn/rational.hpp"
#include "listfn/stdlib.hpp"
#include "support.hpp"

using namespace listfn;

namespace {

const std::string kData = LISTFN_DATA_DIR;

// Position by position: out(product of the prefix, letter, product of the suffix).
Word direct_oracle(const RationalFn& r, const Word& w) {
  const FiniteMonoid& m = r.monoid;
  std::vector<int> xs;
  for (const auto& c : w)
    xs.push_back(r.h[static_cast<std::size_t>(std::find(r.sigma.begin(), r.sigma.end(), c) - r.sigma.begin())]);
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    int pre = m.identity(), suf = m.identity();
    for (std::size_t j = 0; j < i; ++j) pre = m.mult(pre, xs[j]);
    for (std::size_t j = i + 1; j < w.size(); ++j) suf = m.mult(suf, xs[j]);
    int a = static_cast<int>(std::find(r.sigma.begin(), r.sigma.end(), w[i]) - r.sigma.begin());
    const Word& piece = r.output(pre, a, suf);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

FiniteMonoid flip_flop() { return FiniteMonoid({"1", "r", "s"}, {0, 1, 2, 1, 1, 2, 2, 1, 2}, 0); }

RationalFn random_rational(const FiniteMonoid& m, std::vector<std::string> sigma, std::mt19937_64& rng) {
  std::vector<int> h;
  for (std::size_t a = 0; a < sigma.size(); ++a) h.push_back(static_cast<int>(gen::uniform(rng, 0, m.size() - 1)));
  std::vector<Word> out;
  std::size_t n = static_cast<std::size_t>(m.size());
  for (std::size_t i = 0; i < n * sigma.size() * n; ++i) out.push_back(gen::random_word({"x", "y"}, gen::uniform(rng, 0, 2), rng));
  return RationalFn(std::move(sigma), {"x", "y"}, m, h, out);
}

// Left and right sibling products recomputed for every node.
void audit_profiles(const FiniteMonoid& m, const FactTree& t, const ProfiledTree& p, int left, int right) {
  REQUIRE(t.children.size() == p.children.size());
  if (t.is_leaf()) {
    REQUIRE(p.letter == t.letter);
    return;
  }
  REQUIRE(p.label.first == left);
  REQUIRE(p.label.second == right);
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (t.children[i].is_leaf()) {
      audit_profiles(m, t.children[i], p.children[i], 0, 0);
      continue;
    }
    int l = m.identity(), r = m.identity();
    for (std::size_t j = 0; j < i; ++j) l = m.mult(l, t.children[j].label);
    for (std::size_t j = i + 1; j < t.children.size(); ++j) r = m.mult(r, t.children[j].label);
    audit_profiles(m, t.children[i], p.children[i], l, r);
  }
}

}  // namespace

TEST_CASE("direct semantics") {
  RationalFn r = rationals::keep_a();
  CHECK(eval_rational_direct(r, Word{}).empty());
  CHECK(join_word(eval_rational_direct(r, testing::letters("abab"))) == "abb");
  CHECK(eval_rational_direct(r, testing::letters("abab")) == direct_oracle(r, testing::letters("abab")));
  const int one = r.monoid.identity();
  CHECK(eval_rational_direct(r, testing::letters("a")) == r.output(one, 0, one));
  CHECK(eval_rational_direct(r, testing::letters("b")) == r.output(one, 1, one));
  RationalFn mk = rationals::mark_ab();
  CHECK(join_word(eval_rational_direct(mk, testing::letters("baab"))) == "bxaxab");
}

TEST_CASE("rational functions are validated") {
  FiniteMonoid u1 = monoids::u1();
  CHECK_THROWS(RationalFn({"a"}, {"x"}, u1, {0}, {}));
  CHECK_THROWS(RationalFn({"a"}, {"x"}, u1, {5}, std::vector<Word>(4)));
  CHECK_THROWS(RationalFn({"a"}, {"x"}, u1, {0}, std::vector<Word>(4, Word{"q"})));
  CHECK_FALSE(RationalFn({"a"}, {"x"}, monoids::cyclic(2), {1}, std::vector<Word>(4)).aperiodic());
  CHECK_THROWS_AS(compile_rational(RationalFn({"a"}, {"x"}, monoids::cyclic(2), {1}, std::vector<Word>(4))),
                  NotAperiodic);
}

TEST_CASE("sibling profiles of small trees") {
  FiniteMonoid m = monoids::contains_ab();
  int a = m.index_of("a"), b = m.index_of("b");
  auto lp = [](int label, int letter) { return FactTree::node(label, {FactTree::leaf(letter)}); };
  FactTree two = FactTree::node(m.mult(a, b), {lp(a, 0), lp(b, 1)});
  ProfiledTree p = sibling_profiles(m, two);
  CHECK(p.label == std::make_pair(m.identity(), m.identity()));
  CHECK(p.children[0].label == std::make_pair(m.identity(), b));
  CHECK(p.children[1].label == std::make_pair(a, m.identity()));
  CHECK(p.children[0].children[0].is_leaf());
  FactTree single = lp(a, 0);
  CHECK(sibling_profiles(m, single).label == std::make_pair(m.identity(), m.identity()));

  FiniteMonoid u1 = monoids::u1();
  int zero = u1.index_of("0"), one = u1.identity();
  FactTree four = FactTree::node(zero, {lp(zero, 1), lp(zero, 1), lp(zero, 1), lp(zero, 1)});
  ProfiledTree q = sibling_profiles(u1, four);
  std::vector<std::pair<int, int>> want = {{one, zero}, {zero, zero}, {zero, zero}, {zero, one}};
  for (std::size_t i = 0; i < 4; ++i) CHECK(q.children[i].label == want[i]);
}

TEST_CASE("power profiles") {
  FiniteMonoid u1 = monoids::u1();
  int zero = u1.index_of("0"), one = u1.identity();
  CHECK(power_profile_list(u1, 1, zero) == std::vector<std::pair<int, int>>{{one, one}});
  CHECK(power_profile_list(u1, 2, zero) == std::vector<std::pair<int, int>>{{one, zero}, {zero, one}});
  for (const FiniteMonoid& m : {u1, monoids::contains_ab(), flip_flop()})
    for (int s = 0; s < m.size(); ++s)
      for (std::size_t n = 1; n <= 50; ++n) {
        auto prof = power_profile_list(m, n, s);
        REQUIRE(prof.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
          int l = m.identity(), r = m.identity();
          for (std::size_t j = 0; j < i; ++j) l = m.mult(l, s);
          for (std::size_t j = i + 1; j < n; ++j) r = m.mult(r, s);
          REQUIRE(prof[i] == std::make_pair(l, r));
        }
      }
}

TEST_CASE("ancestor lists") {
  FactTree leaf = FactTree::leaf(0);
  auto bare = ancestor_lists(leaf);
  REQUIRE(bare.size() == 1);
  CHECK(bare[0].first.empty());
  CHECK(bare[0].second == 0);
  auto lp = [](int label, int letter) { return FactTree::node(label, {FactTree::leaf(letter)}); };
  FactTree t = FactTree::node(7, {lp(3, 0), lp(4, 1)});
  auto al = ancestor_lists(t);
  REQUIRE(al.size() == 2);
  CHECK(al[0].first == std::vector<int>{7, 3});
  CHECK(al[1].first == std::vector<int>{7, 4});
  CHECK(al[1].second == 1);
}

TEST_CASE("profiles audit, ancestor order and triples on built forests") {
  std::mt19937_64 rng(21);
  std::vector<RationalFn> fns = {rationals::keep_a(), rationals::mark_ab(),
                                 random_rational(flip_flop(), {"a", "b", "c"}, rng)};
  for (const auto& r : fns) {
    std::size_t k = compile_rational(r).depth_bound;
    Homomorphism h = r.hom();
    for (int i = 0; i < 150; ++i) {
      Word w = gen::random_word(r.sigma, gen::uniform(rng, 1, 120), rng);
      FactTree t = build_factorisation(h, w);
      ProfiledTree p = sibling_profiles(r.monoid, t);
      audit_profiles(r.monoid, t, p, r.monoid.identity(), r.monoid.identity());
      auto anc = ancestor_lists(p);
      std::vector<int> leaves;
      for (const auto& [path, letter] : anc) leaves.push_back(letter);
      REQUIRE(leaves == tree_yield(t));
      Word out;
      for (const auto& [path, letter] : anc) {
        auto triple = profile_triple(r.monoid, path, letter, k);
        REQUIRE(triple.has_value());
        auto [l, a, rr] = *triple;
        const Word& piece = r.output(l, a, rr);
        out.insert(out.end(), piece.begin(), piece.end());
      }
      REQUIRE(out == direct_oracle(r, w));
    }
  }
}

TEST_CASE("compiled pipelines agree with the direct semantics") {
  std::mt19937_64 rng(33);
  std::vector<RationalFn> fns = {rationals::keep_a(), rationals::mark_ab(),
                                 random_rational(monoids::contains_ab(), {"a", "b"}, rng),
                                 random_rational(flip_flop(), {"a", "b", "c"}, rng)};
  for (const auto& r : fns) {
    CompiledRational c = compile_rational(r);
    CHECK(c.pipeline.dom() == r.input_type());
    CHECK(c.pipeline.cod() == r.output_type());
    CHECK(eval_pipeline_word(c.pipeline, Word{}).empty());
    for (const auto& w : testing::all_words(r.sigma, r.sigma.size() > 2 ? 6 : 9))
      REQUIRE(eval_pipeline_word(c.pipeline, w) == direct_oracle(r, w));
    for (int i = 0; i < 100; ++i) {
      Word w = gen::random_word(r.sigma, gen::uniform(rng, 0, 200), rng);
      REQUIRE(eval_pipeline_word(c.pipeline, w) == direct_oracle(r, w));
    }
  }
  CompiledRational ka = compile_rational(rationals::keep_a());
  CHECK(join_word(eval_pipeline_word(ka.pipeline, testing::letters("abab"))) == "abb");
}

TEST_CASE("the last stage is a genuine term") {
  CompiledRational c = compile_rational(rationals::keep_a());
  const auto& top = c.pipeline.stages();
  REQUIRE(top.size() == 1);
  const auto& branch = std::get<BranchStage>(top[0]);
  const auto& stages = branch.else_p->stages();
  REQUIRE(stages.size() == 5);
  CHECK(std::holds_alternative<OpaqueStage>(stages[0]));
  CHECK(std::get<OpaqueStage>(stages[0]).name == "forest");
  CHECK(std::holds_alternative<Term>(stages[4]));
  CHECK(is_first_order(std::get<Term>(stages[4])));
  for (std::size_t i = 1; i < stages.size(); ++i) CHECK(stage_dom(stages[i]) == stage_cod(stages[i - 1]));
}

TEST_CASE("pipelines") {
  Value v = testing::val("[a,b]", "{a,b}*");
  CHECK(eval_pipeline(Pipeline{}, v) == v);
  Term r = Term::reverse(Type::finset({"a", "b"}));
  CHECK(eval_pipeline(Pipeline({r}), v) == eval(r, v));
  CHECK_THROWS_AS(Pipeline({r, Term::flat(Type::finset({"a"}))}), TypeError);
}

TEST_CASE("pipelines save and load") {
  for (const auto& r : {rationals::keep_a(), rationals::mark_ab()}) {
    CompiledRational c = compile_rational(r);
    std::string text = save_pipeline(c.pipeline);
    CHECK(text.rfind("listfn-pipeline 1\n", 0) == 0);
    Pipeline back = load_pipeline(text);
    CHECK(save_pipeline(back) == text);
    for (const auto& w : testing::all_words(r.sigma, 7))
      REQUIRE(eval_pipeline_word(back, w) == eval_rational_direct(r, w));
  }
  CHECK_THROWS_AS(load_pipeline("listfn-pipeline 2\n"), SyntaxError);
}

TEST_CASE("rational files") {
  RationalFn ka = parse_rational(read_text_file(kData + "/keep_a.rational"), kData);
  RationalFn mk = parse_rational(read_text_file(kData + "/mark_ab.rational"), kData);
  for (const auto& w : testing::all_words({"a", "b"}, 8)) {
    REQUIRE(eval_rational_direct(ka, w) == eval_rational_direct(rationals::keep_a(), w));
    REQUIRE(eval_rational_direct(mk, w) == eval_rational_direct(rationals::mark_ab(), w));
  }
  RationalFn again = parse_rational(render_rational(mk, "builtin:contains_ab"));
  CHECK(again.out == mk.out);
  CHECK(again.h == mk.h);
  CHECK_THROWS_AS(parse_rational("listfn-rational 1\ninput a\noutput a\nmonoid builtin:U1\nhom a -> 1\n(1, a, 1) -> \"a\"\n"),
                  TypeError);
  CHECK_THROWS_AS(parse_rational("listfn-rational 1\ninput a\nmonoid builtin:Q\n"), SyntaxError);
  CHECK_THROWS_AS(parse_rational("listfn-rational 9\n"), SyntaxError);
  CHECK_THROWS_AS(
      parse_rational("listfn-rational 1\ninput a\noutput a\nmonoid builtin:U1\nhom a -> 1\n(*, a, *) -> \"q\"\n"),
      SyntaxError);
}

TEST_CASE("trees types are shared") {
  Type label = Type::finset({"p", "q"}), sigma = Type::finset({"a", "b"});
  Type t3 = trees_type(3, label, sigma);
  CHECK(t3 == trees_type(3, label, sigma));
  CHECK(trees_type(0, label, sigma) == sigma);
  CHECK(trees_type(1, label, sigma) == Type::sum(sigma, Type::prod(label, Type::prod(sigma, Type::list(sigma)))));
}
