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

#ifndef LISTFN_TYPES_HPP
#define LISTFN_TYPES_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace listfn {

// Sequence of child indices into the parse tree of a type.
using Path = std::vector<int>;

// A nested-list type: one-element sets, finite sets (flat sugar for an
// iterated sum of one-element sets), sums, products, lists and bot.
// Immutable; copies share structure.
class Type {
 public:
  enum class Kind { Atom, FinSet, Sum, Prod, List, Bot };

  Type();  // bot

  static Type atom(std::string name);
  static Type unit() { return atom("1"); }
  static Type finset(std::vector<std::string> names);
  static Type sum(Type left, Type right);
  static Type prod(Type left, Type right);
  static Type list(Type elem);
  static Type bot();

  Kind kind() const;
  // Atom or FinSet.
  bool is_atoms() const;
  // Names of an Atom/FinSet, in declaration order.
  const std::vector<std::string>& names() const;
  bool has_name(std::string_view name) const;
  int name_index(std::string_view name) const;  // -1 when absent

  const Type& left() const;
  const Type& right() const;
  const Type& elem() const;

  // Children in the type parse tree. A FinSet has one Atom child per name.
  std::size_t arity() const;
  Type child(std::size_t i) const;

  // Atom(n) equals FinSet{n}; FinSet equality ignores name order.
  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TypeNode {
  Path path;
  Type label;
};

// Every node of the parse tree, in preorder.
std::vector<TypeNode> type_nodes(const Type& t);
Type type_at(const Type& t, const Path& path);
// Unary predicate name used for the node at `path` in structure encodings.
std::string type_predicate_name(const Path& path);

// Collapses sums of disjoint finite sets into a single finite set,
// recursively. Terms always work with canonical types.
Type canonical(const Type& t);

// How a sum of two types is represented. Disjoint finite sets merge into one
// flat FinSet whose elements need no injection; everything else is a Sum.
struct SumShape {
  Type left;
  Type right;
  Type type;
  bool flat = false;
};
SumShape make_sum(const Type& left, const Type& right);
inline Type sum_of(const Type& l, const Type& r) { return make_sum(l, r).type; }

// Maximum nesting of list/product constructors.
std::size_t type_depth(const Type& t);

Type parse_type(std::string_view text);
std::string render_type(const Type& t);

bool is_identifier(std::string_view s);

}  // namespace listfn

#endif  // LISTFN_TYPES_HPP
