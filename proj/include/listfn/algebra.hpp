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

#ifndef LISTFN_ALGEBRA_HPP
#define LISTFN_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "listfn/value.hpp"

namespace listfn {

// Finite semigroup on elements 0..n-1, with an optional identity.
// Associativity is checked exhaustively on construction.
class FiniteSemigroup {
 public:
  FiniteSemigroup(std::vector<std::string> elements, std::vector<int> table,
                  std::optional<int> identity = std::nullopt);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& name(int m) const { return elements_.at(static_cast<std::size_t>(m)); }
  int index_of(std::string_view name) const;  // -1 when absent
  int mult(int a, int b) const { return table_[static_cast<std::size_t>(a * size() + b)]; }
  const std::vector<int>& table() const { return table_; }
  bool has_identity() const { return identity_.has_value(); }
  int identity() const;

  // Left fold; the empty product is the identity (error without one).
  int product(std::span<const int> xs) const;
  int power(int m, int n) const;  // n >= 1, or n == 0 with an identity

  // Least n >= 1 with m^n = m^(n+1) for all m; nullopt if not aperiodic.
  std::optional<int> aperiodicity_index() const;
  bool is_aperiodic() const { return aperiodicity_index().has_value(); }

 private:
  std::vector<std::string> elements_;
  std::vector<int> table_;
  std::optional<int> identity_;
};

class FiniteMonoid : public FiniteSemigroup {
 public:
  FiniteMonoid(std::vector<std::string> elements, std::vector<int> table, int identity)
      : FiniteSemigroup(std::move(elements), std::move(table), identity) {}
  explicit FiniteMonoid(const FiniteSemigroup& s);  // requires an identity
};

namespace monoids {
// {1,0} under multiplication.
FiniteMonoid u1();
// Transition monoid of the minimal automaton of "contains ab" over {a,b}:
// elements 1, a, b, ba, z (z absorbing, the image of every word containing ab).
FiniteMonoid contains_ab();
FiniteMonoid cyclic(int n);
}  // namespace monoids

// Letter map Sigma -> S, extended to words.
struct Homomorphism {
  std::vector<std::string> alphabet;
  std::vector<int> image;  // image[i] = h(alphabet[i])
  FiniteSemigroup target;

  Homomorphism(std::vector<std::string> alphabet, std::vector<int> image, FiniteSemigroup target);
  int letter_index(std::string_view a) const;  // throws on unknown letters
  std::vector<int> letters(const Word& w) const;
  int apply(std::span<const int> word) const;  // fold of the images
};

// Ordered tree whose leaves carry an integer `letter` and inner nodes a label.
template <class Label>
struct Tree {
  Label label{};
  int letter = -1;
  std::vector<Tree> children;

  bool is_leaf() const { return children.empty(); }
  static Tree leaf(int letter) {
    Tree t;
    t.letter = letter;
    return t;
  }
  static Tree node(Label label, std::vector<Tree> children) {
    Tree t;
    t.label = std::move(label);
    t.children = std::move(children);
    return t;
  }
};

using FactTree = Tree<int>;

template <class Label>
std::vector<int> tree_yield(const Tree<Label>& t) {
  std::vector<int> out;
  std::vector<const Tree<Label>*> stack{&t};
  while (!stack.empty()) {
    const Tree<Label>* n = stack.back();
    stack.pop_back();
    if (n->is_leaf()) {
      out.push_back(n->letter);
      continue;
    }
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

// Edges on the longest root-to-leaf path.
template <class Label>
std::size_t tree_depth(const Tree<Label>& t) {
  std::size_t d = 0;
  for (const auto& c : t.children) d = std::max(d, 1 + tree_depth(c));
  return d;
}

// Factorises a nonempty sequence of element labels of an aperiodic semigroup;
// leaf i of the result carries position i. Throws NotAperiodic.
FactTree factorise(const FiniteSemigroup& s, std::span<const int> labels);
// h-factorisation of a nonempty word of letter indices; leaves carry letters.
FactTree build_factorisation(const Homomorphism& h, std::span<const int> word);
FactTree build_factorisation(const Homomorphism& h, const Word& word);

// Upper bound on the depth of any factorise() result over s, independent of
// the input length. Saturates at UINT64_MAX.
std::uint64_t forest_depth_bound(const FiniteSemigroup& s);

struct Validation {
  bool ok = true;
  std::string violation;  // first violated constraint
};

// Checks the h-factorisation constraints, given the label of each leaf value.
Validation validate_factorisation(const FiniteSemigroup& s, const FactTree& t,
                                  const std::vector<int>& leaf_image);
Validation validate_factorisation(const Homomorphism& h, const FactTree& t);

int eval_hom_via_forest(const Homomorphism& h, std::span<const int> word);
bool regular_membership(const Homomorphism& h, const std::vector<int>& accepting, bool accept_empty,
                        std::span<const int> word);

// s(children...) with leaves printed as letters.
std::string render_tree(const Homomorphism& h, const FactTree& t);

}  // namespace listfn

#endif  // LISTFN_ALGEBRA_HPP
