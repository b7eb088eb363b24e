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

#ifndef LISTFN_STDLIB_HPP
#define LISTFN_STDLIB_HPP

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "listfn/term.hpp"

// Derived list functions, each assembled from calculus nodes only.
namespace listfn::stdlib {

Term identity(const Type& t);
Term unit(const Type& t);  // x -> [x]
// Table lookup on a list-free domain; the table must be total.
Term finite_function(const Type& dom, const Type& cod, const std::map<Value, Value>& table);

// Partial versions with codomain T + bot.
Term head(const Type& t);
Term tail(const Type& t);
Term last(const Type& t);
// Totalised versions.
Term head_or(const Type& t, const Value& dflt);
Term total_tail(const Type& t);  // [] -> []

// list -> min(length, n) in {0..n}.
Term len_upto(int n, const Type& t);
Type len_type(int n);

// (S + G)* -> S*, dropping the G elements.
Term filter_left(const Type& s, const Type& g);
// (S + G)* -> S**, G elements act as separators; n separators give n+1 groups.
Term comma(const Type& s, const Type& g);

Term pair_to_list(const Type& t);                   // (x,y) -> [x,y]
Term list_to_pair(const Type& t, const Value& c);   // totalised with default c
Term concat(const Type& t);                         // (xs, ys) -> xs . ys
// Sliding windows of size k >= 2 as right-nested tuples.
Term windows(int k, const Type& t);
Type tuple_type(int k, const Type& t);

Term if_then_else(const Term& f, const Term& g0, const Term& g1);
// f : S -> G lifted to S x S* -> G x G*.
Term lift_plus(const Term& f);

Term is_empty(const Type& t);
Term is_nonempty(const Type& t);

// A constructed term together with its direct reference semantics.
struct Instance {
  std::string name;
  Term term;
  std::function<Value(const Value&)> reference;
};

using TermParser = std::function<Term(std::string_view)>;

struct CatalogEntry {
  std::string name;       // CLI identifier without the "std:" prefix
  std::string signature;  // argument kinds
  std::function<Instance(const std::vector<std::string>&, const TermParser&)> build;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(std::string_view name);
// Builds `name` from textual arguments (types, numbers, values, terms).
Instance build(std::string_view name, const std::vector<std::string>& args, const TermParser& parse_term);

// Reference semantics, written directly on values.
namespace ref {
Value head(const Value& xs);
Value tail(const Value& xs);
Value last(const Value& xs);
Value len_upto(int n, const Value& xs);
Value filter_left(bool flat, const Type& s, const Value& xs);
Value comma(bool flat, const Type& s, const Value& xs);
Value windows(int k, const Value& xs);
Value list_to_pair(const Value& xs, const Value& c);
}  // namespace ref

}  // namespace listfn::stdlib

#endif  // LISTFN_STDLIB_HPP
