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

#include "listfn/algebra.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "listfn/error.hpp"

namespace listfn {

FiniteSemigroup::FiniteSemigroup(std::vector<std::string> elements, std::vector<int> table,
                                 std::optional<int> identity)
    : elements_(std::move(elements)), table_(std::move(table)), identity_(identity) {
  const int n = size();
  if (n == 0) throw TypeError("semigroup has no elements");
  std::set<std::string> seen(elements_.begin(), elements_.end());
  if (seen.size() != elements_.size()) throw TypeError("semigroup element names are not distinct");
  if (table_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw TypeError("semigroup table has " + std::to_string(table_.size()) + " entries, expected " +
                    std::to_string(n * n));
  for (int x : table_)
    if (x < 0 || x >= n) throw TypeError("semigroup table entry " + std::to_string(x) + " out of range");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
          throw TypeError("multiplication is not associative at (" + name(a) + "," + name(b) + "," +
                          name(c) + ")");
  if (identity_) {
    int e = *identity_;
    if (e < 0 || e >= n) throw TypeError("identity index out of range");
    for (int a = 0; a < n; ++a)
      if (mult(a, e) != a || mult(e, a) != a) throw TypeError("identity law fails at " + name(a));
  }
}

int FiniteSemigroup::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (elements_[static_cast<std::size_t>(i)] == name) return i;
  return -1;
}

int FiniteSemigroup::identity() const {
  if (!identity_) throw Error("semigroup has no identity");
  return *identity_;
}

int FiniteSemigroup::product(std::span<const int> xs) const {
  if (xs.empty()) return identity();
  int acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = mult(acc, xs[i]);
  return acc;
}

int FiniteSemigroup::power(int m, int n) const {
  if (n == 0) return identity();
  int acc = m;
  for (int i = 1; i < n; ++i) acc = mult(acc, m);
  return acc;
}

std::optional<int> FiniteSemigroup::aperiodicity_index() const {
  int index = 1;
  for (int m = 0; m < size(); ++m) {
    // Powers m^1, m^2, ... until the first repetition.
    std::vector<int> seen_at(static_cast<std::size_t>(size()), 0);
    int p = m;
    for (int k = 1;; ++k) {
      if (seen_at[static_cast<std::size_t>(p)]) {
        int first = seen_at[static_cast<std::size_t>(p)];
        if (k - first != 1) return std::nullopt;
        index = std::max(index, first);
        break;
      }
      seen_at[static_cast<std::size_t>(p)] = k;
      p = mult(p, m);
    }
  }
  return index;
}

FiniteMonoid::FiniteMonoid(const FiniteSemigroup& s) : FiniteSemigroup(s) {
  if (!s.has_identity()) throw TypeError("monoid requires an identity element");
}

namespace monoids {

FiniteMonoid u1() { return FiniteMonoid({"1", "0"}, {0, 1, 1, 1}, 0); }

FiniteMonoid contains_ab() {
  // State maps of the automaton q0 -a-> q1, q0 -b-> q0, q1 -a-> q1, q1 -b-> q2,
  // q2 absorbing; the product xy applies x first.
  using Map = std::array<int, 3>;
  const std::vector<std::pair<std::string, Map>> els = {
      {"1", {0, 1, 2}}, {"a", {1, 1, 2}}, {"b", {0, 2, 2}}, {"ba", {1, 2, 2}}, {"z", {2, 2, 2}}};
  std::vector<std::string> names;
  for (const auto& e : els) names.push_back(e.first);
  std::vector<int> table;
  for (const auto& x : els)
    for (const auto& y : els) {
      Map xy{y.second[x.second[0]], y.second[x.second[1]], y.second[x.second[2]]};
      auto it = std::find_if(els.begin(), els.end(), [&](const auto& e) { return e.second == xy; });
      table.push_back(static_cast<int>(it - els.begin()));
    }
  return FiniteMonoid(std::move(names), std::move(table), 0);
}

FiniteMonoid cyclic(int n) {
  std::vector<std::string> names;
  std::vector<int> table;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table.push_back((a + b) % n);
  return FiniteMonoid(std::move(names), std::move(table), 0);
}

}  // namespace monoids

Homomorphism::Homomorphism(std::vector<std::string> alphabet_, std::vector<int> image_, FiniteSemigroup target_)
    : alphabet(std::move(alphabet_)), image(std::move(image_)), target(std::move(target_)) {
  if (alphabet.size() != image.size()) throw TypeError("homomorphism: alphabet and image sizes differ");
  for (int m : image)
    if (m < 0 || m >= target.size()) throw TypeError("homomorphism: image out of range");
}

int Homomorphism::letter_index(std::string_view a) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == a) return static_cast<int>(i);
  throw EvalError("letter '" + std::string(a) + "' is not in the alphabet");
}

std::vector<int> Homomorphism::letters(const Word& w) const {
  std::vector<int> out;
  out.reserve(w.size());
  for (const auto& a : w) out.push_back(letter_index(a));
  return out;
}

int Homomorphism::apply(std::span<const int> word) const {
  std::vector<int> imgs;
  imgs.reserve(word.size());
  for (int a : word) imgs.push_back(image.at(static_cast<std::size_t>(a)));
  return target.product(imgs);
}

// ---------------------------------------------------------------------------
// Factorisation forests.

namespace {

using Set = std::vector<char>;  // membership bitmap over elements

class Factoriser {
 public:
  explicit Factoriser(const FiniteSemigroup& s) : s_(s) {}

  FactTree run(std::span<const int> labels) {
    std::vector<FactTree> items;
    items.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
      items.push_back(FactTree::node(labels[i], {FactTree::leaf(static_cast<int>(i))}));
    Set all(static_cast<std::size_t>(s_.size()), 1);
    return factor(all, std::move(items));
  }

 private:
  Set right_ideal(const Set& sem, int s) const {
    Set out(sem.size(), 0);
    for (int t = 0; t < s_.size(); ++t)
      if (sem[static_cast<std::size_t>(t)]) out[static_cast<std::size_t>(s_.mult(t, s))] = 1;
    return out;
  }

  Set left_ideal(const Set& sem, int s) const {
    Set out(sem.size(), 0);
    for (int t = 0; t < s_.size(); ++t)
      if (sem[static_cast<std::size_t>(t)]) out[static_cast<std::size_t>(s_.mult(s, t))] = 1;
    return out;
  }

  static std::size_t count(const Set& x) { return static_cast<std::size_t>(std::count(x.begin(), x.end(), 1)); }

  FactTree binary(FactTree a, FactTree b) const {
    int l = s_.mult(a.label, b.label);
    return FactTree::node(l, {std::move(a), std::move(b)});
  }

  // Nodes over a run of equally labelled items.
  FactTree single_label(std::vector<FactTree> items) const {
    if (items.size() == 1) return std::move(items[0]);
    int l = items[0].label;
    int p = s_.power(l, static_cast<int>(items.size()));
    return FactTree::node(p, std::move(items));
  }

  FactTree factor(const Set& sem, std::vector<FactTree> items) {
    std::vector<int> present;
    {
      Set seen(sem.size(), 0);
      for (const auto& it : items) seen[static_cast<std::size_t>(it.label)] = 1;
      for (int m = 0; m < s_.size(); ++m)
        if (seen[static_cast<std::size_t>(m)]) present.push_back(m);
    }
    if (present.size() == 1) return single_label(std::move(items));
    for (int s : present) {
      Set t = right_ideal(sem, s);
      if (count(t) < count(sem)) return split(sem, t, s, std::move(items), true);
    }
    for (int s : present) {
      Set t = left_ideal(sem, s);
      if (count(t) < count(sem)) return split(sem, t, s, std::move(items), false);
    }
    throw NotAperiodic("no factorisation case applies; the semigroup is not aperiodic");
  }

  // Case 2 (right = true): pairs (blue run, red run), red = label s, the pair
  // products lie in T = sem*s. Case 3 mirrors it with pairs (red, blue).
  FactTree split(const Set& sem, const Set& t, int s, std::vector<FactTree> items, bool right) {
    struct Run {
      bool red;
      std::vector<FactTree> items;
    };
    std::vector<Run> runs;
    for (auto& it : items) {
      bool red = it.label == s;
      if (runs.empty() || runs.back().red != red) runs.push_back({red, {}});
      runs.back().items.push_back(std::move(it));
    }
    // Pairs start with `first_red` runs and end with the other colour.
    const bool first_red = !right;
    std::size_t lo = 0, hi = runs.size();
    std::optional<FactTree> head, tail;
    auto factor_run = [&](Run& r) {
      return r.red ? single_label(std::move(r.items)) : factor(sem, std::move(r.items));
    };
    if (lo < hi && runs[lo].red != first_red) head = factor_run(runs[lo++]);
    if (lo < hi && runs[hi - 1].red == first_red) tail = factor_run(runs[--hi]);
    std::optional<FactTree> middle;
    if (lo < hi) {
      std::vector<FactTree> us;
      for (std::size_t i = lo; i < hi; i += 2) {
        FactTree a = factor_run(runs[i]);
        FactTree b = factor_run(runs[i + 1]);
        us.push_back(binary(std::move(a), std::move(b)));
      }
      middle = factor(t, std::move(us));
    }
    std::optional<FactTree> acc;
    for (auto* part : {&head, &middle, &tail}) {
      if (!*part) continue;
      acc = acc ? binary(std::move(*acc), std::move(**part)) : std::move(**part);
    }
    return std::move(*acc);
  }

  const FiniteSemigroup& s_;
};

}  // namespace

FactTree factorise(const FiniteSemigroup& s, std::span<const int> labels) {
  if (labels.empty()) throw EvalError("cannot factorise an empty sequence");
  if (!s.is_aperiodic()) throw NotAperiodic("semigroup is not aperiodic");
  return Factoriser(s).run(labels);
}

FactTree build_factorisation(const Homomorphism& h, std::span<const int> word) {
  std::vector<int> labels;
  labels.reserve(word.size());
  for (int a : word) labels.push_back(h.image.at(static_cast<std::size_t>(a)));
  FactTree t = factorise(h.target, labels);
  // Replace positions by letters.
  std::vector<FactTree*> stack{&t};
  while (!stack.empty()) {
    FactTree* n = stack.back();
    stack.pop_back();
    if (n->is_leaf()) {
      n->letter = word[static_cast<std::size_t>(n->letter)];
      continue;
    }
    for (auto& c : n->children) stack.push_back(&c);
  }
  return t;
}

FactTree build_factorisation(const Homomorphism& h, const Word& word) {
  auto letters = h.letters(word);
  return build_factorisation(h, std::span<const int>(letters));
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

// Extra depth of factor(sem, items) over the deepest input item, maximised
// over the possible label sets G' of G. Exact search for small semigroups.
class BoundSearch {
 public:
  explicit BoundSearch(const FiniteSemigroup& s) : s_(s) {}

  std::uint64_t bound(std::uint64_t sem, std::uint64_t g) {
    auto key = std::make_pair(sem, g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t best = case_bound(sem, g);
    if (std::popcount(g) > 1)
      for (int x = 0; x < s_.size(); ++x)
        if (g >> x & 1) best = std::max(best, bound(sem, g & ~(std::uint64_t{1} << x)));
    memo_[key] = best;
    return best;
  }

 private:
  std::uint64_t ideal(std::uint64_t sem, int s, bool right) const {
    std::uint64_t out = 0;
    for (int t = 0; t < s_.size(); ++t)
      if (sem >> t & 1) out |= std::uint64_t{1} << (right ? s_.mult(t, s) : s_.mult(s, t));
    return out;
  }

  // Bound when the labels present are exactly g.
  std::uint64_t case_bound(std::uint64_t sem, std::uint64_t g) {
    if (std::popcount(g) == 1) return 1;
    for (int pass = 0; pass < 2; ++pass)
      for (int s = 0; s < s_.size(); ++s) {
        if (!(g >> s & 1)) continue;
        std::uint64_t t = ideal(sem, s, pass == 0);
        if (std::popcount(t) < std::popcount(sem)) {
          std::uint64_t blue = bound(sem, g & ~(std::uint64_t{1} << s));
          std::uint64_t pair = sat_add(1, std::max<std::uint64_t>(blue, 1));
          std::uint64_t mid = sat_add(pair, bound(t, t));
          return sat_add(2, std::max({mid, blue, std::uint64_t{1}}));
        }
      }
    throw NotAperiodic("semigroup is not aperiodic");
  }

  const FiniteSemigroup& s_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> memo_;
};

// Same recurrence in terms of sizes only.
std::uint64_t size_bound(int n) {
  std::vector<std::vector<std::uint64_t>> d(static_cast<std::size_t>(n) + 1);
  for (int m = 1; m <= n; ++m) {
    d[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(m) + 1, 1);
    for (int g = 2; g <= m; ++g) {
      std::uint64_t blue = d[static_cast<std::size_t>(m)][static_cast<std::size_t>(g) - 1];
      std::uint64_t inner = m > 1 ? d[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(m) - 1] : 1;
      std::uint64_t mid = sat_add(sat_add(1, std::max<std::uint64_t>(blue, 1)), inner);
      d[static_cast<std::size_t>(m)][static_cast<std::size_t>(g)] = sat_add(2, std::max(mid, blue));
    }
  }
  return d[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)];
}

}  // namespace

std::uint64_t forest_depth_bound(const FiniteSemigroup& s) {
  if (!s.is_aperiodic()) throw NotAperiodic("semigroup is not aperiodic");
  // Leaf parents contribute the first level.
  if (s.size() <= 12) {
    std::uint64_t all = (std::uint64_t{1} << s.size()) - 1;
    return sat_add(1, BoundSearch(s).bound(all, all));
  }
  return sat_add(1, size_bound(s.size()));
}

Validation validate_factorisation(const FiniteSemigroup& s, const FactTree& t, const std::vector<int>& leaf_image) {
  if (t.is_leaf()) return {false, "the root is a bare leaf"};
  std::vector<const FactTree*> stack{&t};
  while (!stack.empty()) {
    const FactTree* n = stack.back();
    stack.pop_back();
    if (n->label < 0 || n->label >= s.size()) return {false, "node label out of range"};
    bool has_leaf = std::any_of(n->children.begin(), n->children.end(), [](const FactTree& c) { return c.is_leaf(); });
    if (has_leaf) {
      if (n->children.size() != 1) return {false, "a leaf has siblings"};
      int a = n->children[0].letter;
      if (a < 0 || static_cast<std::size_t>(a) >= leaf_image.size()) return {false, "leaf letter out of range"};
      if (leaf_image[static_cast<std::size_t>(a)] != n->label)
        return {false, "leaf parent is labelled " + s.name(n->label) + " instead of " +
                           s.name(leaf_image[static_cast<std::size_t>(a)])};
      continue;
    }
    if (n->children.size() < 2) return {false, "inner node with a single non-leaf child"};
    std::vector<int> labels;
    for (const auto& c : n->children) labels.push_back(c.label);
    if (s.product(labels) != n->label) return {false, "node label " + s.name(n->label) + " is not the child product"};
    if (n->children.size() >= 3 &&
        !std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels[0]; }))
      return {false, "node with " + std::to_string(labels.size()) + " children has unequal child labels"};
    for (const auto& c : n->children) stack.push_back(&c);
  }
  return {};
}

Validation validate_factorisation(const Homomorphism& h, const FactTree& t) {
  return validate_factorisation(h.target, t, h.image);
}

int eval_hom_via_forest(const Homomorphism& h, std::span<const int> word) {
  return build_factorisation(h, word).label;
}

bool regular_membership(const Homomorphism& h, const std::vector<int>& accepting, bool accept_empty,
                        std::span<const int> word) {
  if (word.empty()) return accept_empty;
  int m = eval_hom_via_forest(h, word);
  return std::find(accepting.begin(), accepting.end(), m) != accepting.end();
}

namespace {

void render_into(const Homomorphism& h, const FactTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += h.alphabet.at(static_cast<std::size_t>(t.letter));
    return;
  }
  out += h.target.name(t.label);
  out += '(';
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ' ';
    render_into(h, t.children[i], out);
  }
  out += ')';
}

}  // namespace

std::string render_tree(const Homomorphism& h, const FactTree& t) {
  std::string out;
  render_into(h, t, out);
  return out;
}

}  // namespace listfn
