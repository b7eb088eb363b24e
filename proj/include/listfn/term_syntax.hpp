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

#ifndef LISTFN_TERM_SYNTAX_HPP
#define LISTFN_TERM_SYNTAX_HPP

#include <map>
#include <string>
#include <string_view>

#include "listfn/term.hpp"

namespace listfn {

// Named groups available to (gprefix NAME). Z<n> is always available.
struct TermEnv {
  std::map<std::string, GroupSpec> groups;
};

// S-expression syntax, e.g. (compose flat@{a} (map reverse@{a})),
// (const [] : {a} -> {a}*), (std:comma {a,b,c} {#}).
Term parse_term(std::string_view text, const TermEnv& env = {});
std::string render_term(const Term& t);

}  // namespace listfn

#endif  // LISTFN_TERM_SYNTAX_HPP
