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

#ifndef LISTFN_TERM_HPP
#define LISTFN_TERM_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "listfn/types.hpp"
#include "listfn/value.hpp"

namespace listfn {

// A finite group given by its multiplication table. Validated on
// construction: associativity, identity, inverses.
class GroupSpec {
 public:
  GroupSpec(std::string name, std::vector<std::string> elements, std::vector<int> table, int identity);
  // Z_n with elements "0".."n-1" under addition mod n.
  static GroupSpec cyclic(int n);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  int identity() const { return identity_; }
  int mult(int a, int b) const { return table_[static_cast<std::size_t>(a * size() + b)]; }
  int index_of(const std::string& name) const;
  Type type() const { return Type::finset(elements_); }

 private:
  std::string name_;
  std::vector<std::string> elements_;
  std::vector<int> table_;
  int identity_;
};

class SubsetSpec;

// A list function term. Typing happens on construction; an ill-typed term is
// still a value, infer_type reports the first ill-composed node.
class Term {
 public:
  enum class Op {
    Const, Proj1, Proj2, CoProjL, CoProjR, Distribute,
    Reverse, Flat, Append, CoAppend, Block,
    Union, Compose, Map, Pair,
    PrefixGroupMult, Guarded,
  };

  static Term constant(Value v, Type dom, Type cod);
  static Term proj1(Type s, Type g);
  static Term proj2(Type s, Type g);
  static Term coproj_l(Type s, Type g);
  static Term coproj_r(Type s, Type g);
  static Term distribute(Type s, Type g, Type d);
  static Term reverse(Type s);
  static Term flat(Type s);
  static Term append(Type s);
  static Term coappend(Type s);
  static Term block(Type s, Type g);
  static Term union_of(Term f, Term g);
  static Term compose(Term g, Term f);  // g after f
  static Term map(Term f);
  static Term pair(Term f, Term g);
  static Term prefix_group(GroupSpec g);
  static Term guarded(Term inner, Term dom_pred, Term cod_pred);

  Op op() const;
  bool well_typed() const;
  const std::string& type_error() const;
  // Both throw TypeError on ill-typed terms.
  const Type& dom() const;
  const Type& cod() const;

  const std::vector<Type>& params() const;
  const std::vector<Term>& args() const;
  const Value& value() const;        // Const
  const GroupSpec& group() const;    // PrefixGroupMult
  bool first_order() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Node n);
  static Term basic(Op op, std::vector<Type> params);
  std::shared_ptr<const Node> node_;
};

std::pair<Type, Type> infer_type(const Term& t);
Value eval(const Term& t, const Value& v);
bool is_first_order(const Term& t);
// Number of nodes.
std::size_t term_size(const Term& t);

// Subset of a type given by a characteristic function into {0,1}.
class SubsetSpec {
 public:
  explicit SubsetSpec(Term pred);
  const Term& pred() const { return pred_; }
  const Type& type() const { return pred_.dom(); }
  bool contains(const Value& v) const;

 private:
  Term pred_;
};

SubsetSpec characteristic_subset(const Term& pred);
Type bool_type();
Value bool_value(bool b);

}  // namespace listfn

#endif  // LISTFN_TERM_HPP
