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

#ifndef LISTFN_REGISTERS_HPP
#define LISTFN_REGISTERS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "listfn/algebra.hpp"
#include "listfn/error.hpp"
#include "listfn/value.hpp"

namespace listfn {

// Monoid policies. Each provides Elem, identity, mult, is_identity and contains.

struct FreeMonoid {
  using Elem = Word;
  std::vector<std::string> alphabet;

  Elem identity() const { return {}; }
  Elem mult(const Elem& a, const Elem& b) const {
    Elem out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }
  bool is_identity(const Elem& e) const { return e.empty(); }
  bool contains(const Elem& e) const {
    return std::all_of(e.begin(), e.end(), [&](const std::string& c) {
      return std::find(alphabet.begin(), alphabet.end(), c) != alphabet.end();
    });
  }
};

struct FiniteMonoidRef {
  using Elem = int;
  const FiniteMonoid* monoid;

  Elem identity() const { return monoid->identity(); }
  Elem mult(Elem a, Elem b) const { return monoid->mult(a, b); }
  bool is_identity(Elem e) const { return e == monoid->identity(); }
  bool contains(Elem e) const { return e >= 0 && e < monoid->size(); }
};

// A right-hand-side symbol: a register (0-based) or a monoid element.
template <class E>
struct RegSym {
  int reg = -1;
  E elem{};

  bool is_reg() const { return reg >= 0; }
  static RegSym r(int i) { return {i, E{}}; }
  static RegSym m(E e) { return {-1, std::move(e)}; }
  friend bool operator==(const RegSym&, const RegSym&) = default;
  friend auto operator<=>(const RegSym&, const RegSym&) = default;
};

template <class E>
using Rhs = std::vector<RegSym<E>>;

template <class E>
struct RegUpdate {
  std::vector<Rhs<E>> rhs;

  std::size_t k() const { return rhs.size(); }
  friend bool operator==(const RegUpdate&, const RegUpdate&) = default;
  friend auto operator<=>(const RegUpdate&, const RegUpdate&) = default;
};

template <class E>
using RegValuation = std::vector<E>;

// Register-only update; T_k is the set of these.
struct Abstraction {
  std::vector<std::vector<int>> rhs;

  std::size_t k() const { return rhs.size(); }
  friend bool operator==(const Abstraction&, const Abstraction&) = default;
  friend auto operator<=>(const Abstraction&, const Abstraction&) = default;
};

Abstraction identity_abstraction(std::size_t k);
Abstraction abstraction_product(const Abstraction& a, const Abstraction& b);
bool is_nonduplicating(const Abstraction& a);
bool is_monotone(const Abstraction& a);
std::set<int> temporary_registers(const Abstraction& a);
// Edges (i, j) meaning register i's right hand side mentions register j.
std::vector<std::pair<int, int>> dependency_graph(const Abstraction& a);
// Weakly connected components of the dependency graph, each sorted.
std::vector<std::vector<int>> register_components(const Abstraction& a);
// Every abstraction of a monotone nonduplicating k-register update.
std::vector<Abstraction> enumerate_abstractions(std::size_t k);
// Submonoid of T_k generated by the given abstractions.
struct AbstractionMonoid {
  std::vector<Abstraction> elements;  // elements[0] is the identity
  FiniteMonoid monoid;
  int index_of(const Abstraction& a) const;
};
AbstractionMonoid generated_abstraction_monoid(std::size_t k, const std::vector<Abstraction>& gens);
std::string render_abstraction(const Abstraction& a);

template <class E>
Abstraction abstraction(const RegUpdate<E>& u) {
  Abstraction a;
  for (const auto& r : u.rhs) {
    std::vector<int> regs;
    for (const auto& s : r)
      if (s.is_reg()) regs.push_back(s.reg);
    a.rhs.push_back(std::move(regs));
  }
  return a;
}

template <class E>
bool is_nonduplicating(const RegUpdate<E>& u) {
  return is_nonduplicating(abstraction(u));
}
template <class E>
bool is_monotone(const RegUpdate<E>& u) {
  return is_monotone(abstraction(u));
}

template <class M>
RegUpdate<typename M::Elem> identity_update(const M&, std::size_t k) {
  RegUpdate<typename M::Elem> u;
  for (std::size_t i = 0; i < k; ++i) u.rhs.push_back({RegSym<typename M::Elem>::r(static_cast<int>(i))});
  return u;
}

template <class M>
RegValuation<typename M::Elem> empty_valuation(const M& m, std::size_t k) {
  return RegValuation<typename M::Elem>(k, m.identity());
}

// Merges adjacent monoid elements and drops identities.
template <class M>
Rhs<typename M::Elem> normalise(const M& m, const Rhs<typename M::Elem>& r) {
  Rhs<typename M::Elem> out;
  for (const auto& s : r) {
    if (s.is_reg()) {
      out.push_back(s);
    } else if (!m.is_identity(s.elem)) {
      if (!out.empty() && !out.back().is_reg())
        out.back().elem = m.mult(out.back().elem, s.elem);
      else
        out.push_back(s);
      if (m.is_identity(out.back().elem)) out.pop_back();
    }
  }
  return out;
}

template <class M>
RegUpdate<typename M::Elem> normalise(const M& m, const RegUpdate<typename M::Elem>& u) {
  RegUpdate<typename M::Elem> out;
  for (const auto& r : u.rhs) out.rhs.push_back(normalise(m, r));
  return out;
}

template <class M>
void check_update(const M& m, const RegUpdate<typename M::Elem>& u, std::size_t k) {
  if (u.k() != k) throw TypeError("update has " + std::to_string(u.k()) + " registers, expected " + std::to_string(k));
  for (const auto& r : u.rhs)
    for (const auto& s : r) {
      if (s.is_reg() && static_cast<std::size_t>(s.reg) >= k) throw TypeError("register reference out of range");
      if (!s.is_reg() && !m.contains(s.elem)) throw TypeError("update mentions a non-member of the monoid");
    }
}

template <class M>
RegValuation<typename M::Elem> apply_update(const M& m, const RegValuation<typename M::Elem>& v,
                                            const RegUpdate<typename M::Elem>& u) {
  RegValuation<typename M::Elem> out;
  out.reserve(u.k());
  for (const auto& r : u.rhs) {
    typename M::Elem acc = m.identity();
    for (const auto& s : r) acc = m.mult(acc, s.is_reg() ? v.at(static_cast<std::size_t>(s.reg)) : s.elem);
    out.push_back(std::move(acc));
  }
  return out;
}

// u1 then u2: register j in u2 is replaced by u1's j-th right hand side.
template <class M>
RegUpdate<typename M::Elem> update_product(const M& m, const RegUpdate<typename M::Elem>& u1,
                                           const RegUpdate<typename M::Elem>& u2) {
  RegUpdate<typename M::Elem> out;
  for (const auto& r : u2.rhs) {
    Rhs<typename M::Elem> acc;
    for (const auto& s : r) {
      if (s.is_reg()) {
        const auto& sub = u1.rhs.at(static_cast<std::size_t>(s.reg));
        acc.insert(acc.end(), sub.begin(), sub.end());
      } else {
        acc.push_back(s);
      }
    }
    out.rhs.push_back(normalise(m, acc));
  }
  return out;
}

template <class M>
RegUpdate<typename M::Elem> fold_updates(const M& m, const std::vector<RegUpdate<typename M::Elem>>& us,
                                         std::size_t k) {
  RegUpdate<typename M::Elem> acc = identity_update(m, k);
  for (const auto& u : us) acc = update_product(m, acc, u);
  return acc;
}

template <class E>
std::vector<E> leftsub(const RegUpdate<E>& u) {
  if (u.k() != 1) throw TypeError("leftsub expects a one-register update");
  std::vector<E> out;
  for (const auto& s : u.rhs[0]) {
    if (s.is_reg()) return out;
    out.push_back(s.elem);
  }
  throw TypeError("leftsub expects register 1 to occur");
}

template <class E>
std::vector<E> rightsub(const RegUpdate<E>& u) {
  if (u.k() != 1) throw TypeError("rightsub expects a one-register update");
  std::vector<E> out;
  bool seen = false;
  for (const auto& s : u.rhs[0]) {
    if (s.is_reg()) {
      if (seen) throw TypeError("rightsub expects register 1 to occur once");
      seen = true;
    } else if (seen) {
      out.push_back(s.elem);
    }
  }
  if (!seen) throw TypeError("rightsub expects register 1 to occur");
  return out;
}

namespace detail {
template <class E>
void require_homogeneous(const std::vector<RegUpdate<E>>& us, const Abstraction& tau) {
  if (us.empty()) throw EvalError("homogeneous product of an empty list");
  for (const auto& u : us)
    if (abstraction(u) != tau) throw EvalError("list is not homogeneous under " + render_abstraction(tau));
}
}  // namespace detail

template <class M>
RegUpdate<typename M::Elem> homogeneous_product_1reg(const M& m, const std::vector<RegUpdate<typename M::Elem>>& us,
                                                     const Abstraction& tau) {
  using E = typename M::Elem;
  if (tau.k() != 1) throw EvalError("one-register homogeneous product needs k = 1");
  detail::require_homogeneous(us, tau);
  if (tau.rhs[0].empty()) return us.back();
  // Keep case: s = leftsub(u_n) ... leftsub(u_1), t = rightsub(u_1) ... rightsub(u_n).
  Rhs<E> r;
  for (auto it = us.rbegin(); it != us.rend(); ++it)
    for (auto& e : leftsub(*it)) r.push_back(RegSym<E>::m(std::move(e)));
  r.push_back(RegSym<E>::r(0));
  for (const auto& u : us)
    for (auto& e : rightsub(u)) r.push_back(RegSym<E>::m(std::move(e)));
  return {{normalise(m, r)}};
}

// Product of us[max(0, i-k+1)] .. us[i] for each i.
template <class M>
std::vector<RegUpdate<typename M::Elem>> window_products(const M& m, const std::vector<RegUpdate<typename M::Elem>>& us,
                                                         std::size_t k) {
  std::vector<RegUpdate<typename M::Elem>> out;
  out.reserve(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) {
    std::size_t lo = i + 1 >= k ? i + 1 - k : 0;
    RegUpdate<typename M::Elem> acc = us[lo];
    for (std::size_t j = lo + 1; j <= i; ++j) acc = update_product(m, acc, us[j]);
    out.push_back(std::move(acc));
  }
  return out;
}

template <class M>
std::vector<RegUpdate<typename M::Elem>> prefix_products_temporary(const M& m,
                                                                   const std::vector<RegUpdate<typename M::Elem>>& us) {
  if (us.empty()) return {};
  Abstraction tau = abstraction(us[0]);
  detail::require_homogeneous(us, tau);
  if (temporary_registers(tau).size() != tau.k()) throw EvalError("prefix products need every register temporary");
  return window_products(m, us, tau.k());
}

template <class M>
RegUpdate<typename M::Elem> homogeneous_product(const M& m, const std::vector<RegUpdate<typename M::Elem>>& us,
                                                const Abstraction& tau) {
  using E = typename M::Elem;
  detail::require_homogeneous(us, tau);
  const std::size_t k = tau.k();
  const std::size_t n = us.size();
  if (n <= k) return fold_updates(m, us, k);
  // Temporary registers only see the last k updates.
  std::vector<RegUpdate<E>> windows = window_products(m, us, k);
  RegUpdate<E> result = windows.back();
  std::set<int> temps = temporary_registers(tau);
  std::vector<RegUpdate<E>> head(us.begin(), us.begin() + static_cast<std::ptrdiff_t>(k));
  RegUpdate<E> pk = fold_updates(m, head, k);
  for (const auto& comp : register_components(tau)) {
    std::optional<int> root;
    for (int r : comp)
      if (!temps.count(r)) root = r;
    if (!root) continue;  // all temporary: already correct in result
    const int r = *root;
    // Treat register r as a single register; its other inputs come from the window ending just before.
    std::vector<RegUpdate<E>> single;
    single.reserve(n - k);
    for (std::size_t i = k; i < n; ++i) {
      Rhs<E> rhs;
      for (const auto& s : us[i].rhs[static_cast<std::size_t>(r)]) {
        if (!s.is_reg()) {
          rhs.push_back(s);
        } else if (s.reg == r) {
          rhs.push_back(RegSym<E>::r(0));
        } else {
          for (const auto& t : windows[i - 1].rhs[static_cast<std::size_t>(s.reg)]) {
            if (t.is_reg()) throw EvalError("temporary register value depends on the initial valuation");
            rhs.push_back(t);
          }
        }
      }
      single.push_back({{normalise(m, rhs)}});
    }
    RegUpdate<E> z = homogeneous_product_1reg(m, single, Abstraction{{{0}}});
    Rhs<E> rhs;
    for (const auto& s : z.rhs[0]) {
      if (s.is_reg()) {
        const auto& sub = pk.rhs[static_cast<std::size_t>(r)];
        rhs.insert(rhs.end(), sub.begin(), sub.end());
      } else {
        rhs.push_back(s);
      }
    }
    result.rhs[static_cast<std::size_t>(r)] = normalise(m, rhs);
  }
  return result;
}

template <class M>
class ListProduct {
 public:
  using E = typename M::Elem;
  ListProduct(const M& m, const std::vector<RegUpdate<E>>& us) : m_(m), us_(us) {}

  RegUpdate<E> eval(const FactTree& node, const std::vector<Abstraction>& names) const {
    if (node.is_leaf()) return us_[static_cast<std::size_t>(node.letter)];
    if (node.children.size() == 1) return eval(node.children[0], names);
    std::vector<RegUpdate<E>> parts;
    for (const auto& c : node.children) parts.push_back(eval(c, names));
    if (parts.size() == 2) return update_product(m_, parts[0], parts[1]);
    return homogeneous_product(m_, parts, names[static_cast<std::size_t>(node.children[0].label)]);
  }

 private:
  const M& m_;
  const std::vector<RegUpdate<E>>& us_;
};

// Product of a list of monotone nonduplicating updates, computed along a
// factorisation forest for the abstraction homomorphism.
template <class M>
RegUpdate<typename M::Elem> product_list_updates(const M& m, const std::vector<RegUpdate<typename M::Elem>>& us,
                                                 std::size_t k) {
  for (const auto& u : us) {
    check_update(m, u, k);
    if (!is_nonduplicating(u) || !is_monotone(u)) throw TypeError("update is not monotone and nonduplicating");
  }
  if (us.empty()) return identity_update(m, k);
  std::vector<Abstraction> abs;
  for (const auto& u : us) abs.push_back(abstraction(u));
  AbstractionMonoid tk = generated_abstraction_monoid(k, abs);
  std::vector<int> labels;
  for (const auto& a : abs) labels.push_back(tk.index_of(a));
  FactTree tree = factorise(tk.monoid, labels);
  ListProduct<M> lp(m, us);
  return lp.eval(tree, tk.elements);
}

template <class M>
RegValuation<typename M::Elem> apply_update_sequence(const M& m, const std::vector<RegUpdate<typename M::Elem>>& us,
                                                     std::size_t k) {
  return apply_update(m, empty_valuation(m, k), product_list_updates(m, us, k));
}

// ---------------------------------------------------------------------------
// Text form: `1 := [$1, "ab"] | 2 := []`. Unlisted registers keep their value.

using WordUpdate = RegUpdate<Word>;

WordUpdate parse_word_update(const std::string& text, std::size_t k);
std::string render_word_update(const WordUpdate& u);
// Literal letters: split on spaces if present, otherwise one letter per character.
Word parse_literal(const std::string& text);
std::string render_literal(const Word& w);

}  // namespace listfn

#endif  // LISTFN_REGISTERS_HPP
