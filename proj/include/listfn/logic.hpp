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

#ifndef LISTFN_LOGIC_HPP
#define LISTFN_LOGIC_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "listfn/term.hpp"
#include "listfn/types.hpp"
#include "listfn/value.hpp"

namespace listfn {

using Vocabulary = std::map<std::string, int>;  // relation name -> arity
using Tuple = std::vector<int>;

// Finite relational structure. Element ids need not be contiguous.
struct Structure {
  std::vector<int> universe;  // sorted, distinct
  Vocabulary vocab;
  std::map<std::string, std::set<Tuple>> rels;

  bool holds(const std::string& rel, const Tuple& t) const;
  // Throws TypeError on tuples outside the universe or of the wrong arity.
  void validate() const;
  friend bool operator==(const Structure&, const Structure&) = default;
};

class Formula {
 public:
  enum class Kind { True, False, Rel, Eq, Not, And, Or, Implies, Iff, Exists, Forall };

  Formula();  // false

  static Formula truth(bool b);
  static Formula rel(std::string name, std::vector<std::string> vars);
  static Formula eq(std::string a, std::string b);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula exists(std::string var, Formula f);
  static Formula forall(std::string var, Formula f);
  static Formula conj_all(const std::vector<Formula>& fs);  // empty: true
  static Formula disj_all(const std::vector<Formula>& fs);  // empty: false

  Kind kind() const;
  // Relation name for Rel, bound variable for quantifiers.
  const std::string& name() const;
  const std::vector<std::string>& vars() const;
  const Formula& sub(std::size_t i) const;
  std::size_t arity() const;

  std::set<std::string> free_vars() const;
  std::size_t quantifier_depth() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Renames free variables; bound variables are freshened where needed.
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& ren);
// Fresh variable name not accepted by ordinary user syntax collisions.
std::string fresh_var(std::string_view stem);

struct FormulaMacro {
  std::vector<std::string> params;
  Formula body;
};
using MacroTable = std::map<std::string, FormulaMacro>;

// Surface syntax: `E x. A y. (pare(x,y) & !sib(y,x)) -> x=y`, with
// & | ! -> <-> true false, x=y, x!=y, and x<y, x>y, x<=y over `lt`.
// Built-in macros: root(x), nsib(x,y), first(x), last(x). User macros
// shadow nothing and are expanded at parse time.
Formula parse_formula(std::string_view text, const MacroTable& macros = {});
std::string render_formula(const Formula& f);

using Assignment = std::map<std::string, int>;

// Recursive evaluation with quantifiers over the universe.
bool eval_formula(const Structure& s, const Formula& f, const Assignment& asg = {});
// Satisfying assignments of `vars` (which must cover the free variables),
// computed bottom-up as relations over the universe.
std::set<Tuple> satisfying_table(const Structure& s, const Formula& f, const std::vector<std::string>& vars);
bool eval_formula_table(const Structure& s, const Formula& f, const Assignment& asg = {});

// Element ids are c * n + i for copy c (0-based) of the i-th element; the
// k-ary predicate `copy` holds on same-origin tuples in copy order.
Structure copy_k(const Structure& s, std::size_t k);
inline constexpr const char* kCopyPredicate = "copy";

// Parameter names for a relation formula of the given arity: x, y, then x3...
std::vector<std::string> relation_params(std::size_t arity);

struct Interpretation1D {
  Vocabulary input;
  Vocabulary output;
  Formula universe;                          // free variable x
  std::map<std::string, Formula> relations;  // free variables relation_params(arity)
};

Structure apply_interpretation(const Interpretation1D& in, const Structure& s);

// k-copying followed by a one-dimensional interpretation, stored per copy:
// universe[c] describes copy c, relations[R][copies] the tuples whose
// elements come from the given copies. Formulas speak about the input
// structure; absent entries are false.
struct FOTransduction {
  std::string name;
  std::size_t copies = 1;
  Vocabulary input;
  Vocabulary output;
  std::vector<Formula> universe;
  std::map<std::string, std::map<std::vector<int>, Formula>> relations;
};

void validate_transduction(const FOTransduction& t);
Structure apply_transduction(const FOTransduction& t, const Structure& s);
// The same transduction as an interpretation over the copied structure.
Interpretation1D to_interpretation(const FOTransduction& t);
// Re-checks that output elements come from the copied universe and that
// every output tuple satisfies its formula. Returns the first problem.
std::optional<std::string> audit_transduction(const FOTransduction& t, const Structure& in, const Structure& out);

// ---------------------------------------------------------------------------
// Parse-tree encodings of values.

// Vocabulary pare/2, sib/2 and one unary predicate per type node.
Vocabulary encoding_vocabulary(const Type& t);
Structure encode_value(const Value& v, const Type& t);
// Inverse of encode_value on structures isomorphic to an encoding.
Value decode_structure(const Structure& s, const Type& t);
// Covering relation of sib.
std::set<Tuple> derived_next_sibling(const Structure& s);

// Word structures: positions 0..n-1, lt, S, and Q_a per letter.
Structure word_structure(const Word& w, const std::vector<std::string>& alphabet);
Word decode_word_structure(const Structure& s, const std::vector<std::string>& alphabet);

// ---------------------------------------------------------------------------
// Hand-built transductions. Type parameters: reverse/flat/append/coappend
// take the element type, block takes the two summands, ab_example none.

FOTransduction builtin_fot(const std::string& name, const std::vector<Type>& params);
// The calculus basic the transduction is paired with (not for ab_example).
Term builtin_term(const std::string& name, const std::vector<Type>& params);
std::vector<std::string> builtin_fot_names();

struct CommuteFailure {
  Value input;
  std::string expected;
  std::string actual;  // rendered output or the decode diagnostic
};

struct CommuteReport {
  std::size_t checked = 0;
  std::vector<CommuteFailure> failures;
  bool ok() const { return failures.empty(); }
};

CommuteReport check_commutes(const Term& t, const FOTransduction& fot, const std::vector<Value>& samples);

// Structure exchange format with header `listfn-structure 1`.
std::string render_structure(const Structure& s);
Structure parse_structure(const std::string& text);
// Transduction files with header `listfn-fot 1`.
std::string render_transduction(const FOTransduction& t);
FOTransduction parse_transduction(const std::string& text);

}  // namespace listfn

#endif  // LISTFN_LOGIC_HPP
