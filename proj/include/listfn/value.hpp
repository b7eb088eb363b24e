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

#ifndef LISTFN_VALUE_HPP
#define LISTFN_VALUE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "listfn/types.hpp"

namespace listfn {

// Inhabitant of a nested-list type, i.e. its parse tree.
class Value {
 public:
  enum class Kind { Sym, Pair, InL, InR, List, Bot };

  Value();  // bot

  static Value sym(std::string name);
  static Value pair(Value fst, Value snd);
  static Value inl(Value v);
  static Value inr(Value v);
  static Value list(std::vector<Value> items);
  static Value bot();

  Kind kind() const;
  const std::string& name() const;
  const Value& fst() const;
  const Value& snd() const;
  const Value& inner() const;  // InL/InR payload
  const std::vector<Value>& items() const;

  // Total order, used for table lookups.
  friend int compare(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Value& a, const Value& b) { return compare(a, b) != 0; }
  friend bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool check_value(const Value& v, const Type& t);

// Sym and Bot count 1, pairs and injections add up their parts, a list
// counts 1 plus its items.
std::size_t value_size(const Value& v);
std::size_t min_value_size(const Type& t);

// All values of `t` of exactly `size`, and of size at most `max_size`.
std::vector<Value> enumerate_values(const Type& t, std::size_t size);
std::vector<Value> enumerate_values_upto(const Type& t, std::size_t max_size);

// A random value of size at most max(budget, min_value_size(t)).
Value random_value(const Type& t, std::size_t budget, std::mt19937_64& rng);

// Every value of a list-free type; throws TypeError if `t` contains a list.
std::vector<Value> finite_values(const Type& t);
bool is_finite_type(const Type& t);

// Smallest inhabitant: first name, left summand, empty list.
Value default_value(const Type& t);

Value list_of_syms(const std::vector<std::string>& names);

std::string render_value(const Value& v);
// Type-directed; right-nested tuples may be written flat, (a,b,c).
Value parse_value(std::string_view text, const Type& t);

// Words over a finite alphabet of string letters.
using Word = std::vector<std::string>;

// Bracketed string encoding of bounded-depth nested lists.
Word string_encode(const Value& v, const Type& t);
Value string_decode(const Word& w, const Type& t);
// Letters that can occur in string_encode(·, t).
std::vector<std::string> encoding_alphabet(const Type& t);
std::string join_word(const Word& w, std::string_view sep = "");
// Splits concatenated text into letters of encoding_alphabet(t), longest match.
Word split_encoded(std::string_view text, const Type& t);

}  // namespace listfn

#endif  // LISTFN_VALUE_HPP
