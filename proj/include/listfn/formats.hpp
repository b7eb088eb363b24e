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

#ifndef LISTFN_FORMATS_HPP
#define LISTFN_FORMATS_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "listfn/algebra.hpp"
#include "listfn/logic.hpp"
#include "listfn/rational.hpp"
#include "listfn/sst.hpp"
#include "listfn/term.hpp"
#include "listfn/term_syntax.hpp"

namespace listfn {

// Every file starts with `listfn-<kind> <version>`; `;` starts a comment.
std::string read_text_file(const std::filesystem::path& p);
// Kind named by the header line, e.g. "monoid" for `listfn-monoid 1`.
std::string file_kind(const std::string& text);

// listfn-monoid 1
//   elements 1 0
//   identity 1        (optional; a name or a 0-based index)
//   row 1 0           (one row per element, row-major)
FiniteSemigroup parse_semigroup(const std::string& text);
FiniteMonoid parse_monoid(const std::string& text);
std::string render_monoid(const FiniteSemigroup& s);
// builtin:U1, builtin:contains_ab, builtin:Z<n>, or a monoid file.
FiniteMonoid resolve_monoid(const std::string& ref, const std::filesystem::path& base = {});

// listfn-group 1, same body as a monoid file plus an optional `name G`.
GroupSpec parse_group(const std::string& text, const std::string& default_name = "G");
std::string render_group(const GroupSpec& g);

// listfn-rational 1
//   input a b
//   output a b
//   monoid builtin:U1
//   hom a -> 1
//   (1, a, *) -> "a"   (`*` matches any element; later rows win)
RationalFn parse_rational(const std::string& text, const std::filesystem::path& base = {});
std::string render_rational(const RationalFn& r, const std::string& monoid_ref);

// listfn-term 1
//   group G file.group   (optional, repeatable)
//   <s-expression, may span lines>
Term parse_term_file(const std::string& text, const std::filesystem::path& base = {});

// listfn-types 1, lines `NAME = TYPE`.
std::map<std::string, Type> parse_types(const std::string& text);

// Named artifacts loaded from files. Names are file stems (or the names of a
// types file) and must be unique across kinds; everything is validated when
// loaded.
class Workspace {
 public:
  // Returns the registered name.
  std::string load(const std::filesystem::path& p);
  // Loads every regular file with a listfn header in `dir`, sorted by name.
  void load_dir(const std::filesystem::path& dir);

  std::map<std::string, Type> types;
  std::map<std::string, Term> terms;
  std::map<std::string, FiniteMonoid> monoids;
  std::map<std::string, GroupSpec> groups;
  std::map<std::string, RationalFn> rationals;
  std::map<std::string, SSTSpec> ssts;
  std::map<std::string, FOTransduction> transductions;
  std::map<std::string, Structure> structures;
  std::map<std::string, Pipeline> pipelines;

  bool contains(const std::string& name) const;

 private:
  void claim(const std::string& name);
  std::map<std::string, std::string> kinds_;
};

}  // namespace listfn

#endif  // LISTFN_FORMATS_HPP
