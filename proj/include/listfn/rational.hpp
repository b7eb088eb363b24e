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

#ifndef LISTFN_RATIONAL_HPP
#define LISTFN_RATIONAL_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "listfn/algebra.hpp"
#include "listfn/term.hpp"
#include "json.hpp"

namespace listfn {

// Letterwise transduction: position i outputs out(h(prefix), a_i, h(suffix)).
struct RationalFn {
  std::vector<std::string> sigma;
  std::vector<std::string> gamma;
  FiniteMonoid monoid;
  std::vector<int> h;      // h[a] for each letter of sigma
  std::vector<Word> out;   // indexed by out_index

  RationalFn(std::vector<std::string> sigma, std::vector<std::string> gamma, FiniteMonoid monoid,
             std::vector<int> h, std::vector<Word> out);

  std::size_t out_index(int m, int a, int m2) const {
    return (static_cast<std::size_t>(m) * sigma.size() + static_cast<std::size_t>(a)) *
               static_cast<std::size_t>(monoid.size()) + static_cast<std::size_t>(m2);
  }
  const Word& output(int m, int a, int m2) const { return out[out_index(m, a, m2)]; }
  Homomorphism hom() const { return {sigma, h, monoid}; }
  bool aperiodic() const { return monoid.is_aperiodic(); }
  Type input_type() const { return Type::list(Type::finset(sigma)); }
  Type output_type() const { return Type::list(Type::finset(gamma)); }
};

Word eval_rational_direct(const RationalFn& r, const Word& w);

// Non-leaf labels replaced by (left sibling product, right sibling product).
using ProfiledTree = Tree<std::pair<int, int>>;

ProfiledTree sibling_profiles(const FiniteMonoid& m, const FactTree& t);
// Profiles ((s^{i-1}, s^{n-i}))_i of n equally labelled siblings, with
// exponents beyond the aperiodicity index saturated.
std::vector<std::pair<int, int>> power_profile_list(const FiniteMonoid& m, std::size_t n, int s);

// For each leaf, left to right: labels of its non-leaf ancestors, root first.
template <class Label>
std::vector<std::pair<std::vector<Label>, int>> ancestor_lists(const Tree<Label>& t) {
  std::vector<std::pair<std::vector<Label>, int>> out;
  std::vector<Label> path;
  std::function<void(const Tree<Label>&)> go = [&](const Tree<Label>& n) {
    if (n.is_leaf()) {
      out.emplace_back(path, n.letter);
      return;
    }
    path.push_back(n.label);
    for (const auto& c : n.children) go(c);
    path.pop_back();
  };
  go(t);
  return out;
}

// (s1...sn, a, tn...t1) when n <= k.
std::optional<std::tuple<int, int, int>> profile_triple(const FiniteMonoid& m,
                                                        const std::vector<std::pair<int, int>>& ancestors,
                                                        int letter, std::size_t k);

// Trees_k(L, Sigma) = Sigma for k = 0, Trees_{k-1} + L x Trees_{k-1}^+ otherwise.
Type trees_type(std::size_t k, const Type& label, const Type& sigma);

// A stage-wise function. Term stages are calculus terms; opaque stages are
// algorithmic, identified by name and parameters so they can be reloaded.
class Pipeline;

struct OpaqueStage {
  std::string name;
  Type dom;
  Type cod;
  nlohmann::json params;
  std::function<Value(const Value&)> fn;
};

struct BranchStage {
  Term pred;  // dom -> {0,1}; 1 selects `then_p`
  std::shared_ptr<const Pipeline> then_p;
  std::shared_ptr<const Pipeline> else_p;
};

using Stage = std::variant<Term, OpaqueStage, BranchStage>;

class Pipeline {
 public:
  Pipeline() = default;
  explicit Pipeline(std::vector<Stage> stages);  // checks adjacent types

  const std::vector<Stage>& stages() const { return stages_; }
  bool empty() const { return stages_.empty(); }
  // Undefined for the empty pipeline.
  Type dom() const;
  Type cod() const;

 private:
  std::vector<Stage> stages_;
};

Type stage_dom(const Stage& s);
Type stage_cod(const Stage& s);
Value eval_pipeline(const Pipeline& p, const Value& v);
Word eval_pipeline_word(const Pipeline& p, const Word& w);

struct CompiledRational {
  Pipeline pipeline;
  std::size_t depth_bound = 0;  // k of the forest stage
};

// Empty input -> [], otherwise forest, sibling profiles, ancestor lists,
// triples, then map out and flatten. Throws NotAperiodic.
CompiledRational compile_rational(const RationalFn& r);

// Line-oriented serialisation: a header, then one JSON object per stage.
std::string save_pipeline(const Pipeline& p);
Pipeline load_pipeline(const std::string& text);

namespace rationals {
// Over U1 with h(a) = 1, h(b) = 0: keeps the a's before the first b, and every b.
RationalFn keep_a();
// Over the "contains ab" monoid: letters are copied until the prefix contains
// ab, and each position whose suffix contains ab also emits x.
RationalFn mark_ab();
}  // namespace rationals

}  // namespace listfn

#endif  // LISTFN_RATIONAL_HPP
