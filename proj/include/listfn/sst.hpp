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

#ifndef LISTFN_SST_HPP
#define LISTFN_SST_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "listfn/rational.hpp"
#include "listfn/registers.hpp"

namespace listfn {

struct SSTSpec {
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> input;
  std::vector<std::string> output;
  std::size_t registers = 1;
  std::size_t result = 0;  // 0-based output register
  std::map<std::pair<std::string, std::string>, std::pair<std::string, WordUpdate>> delta;
};

// Checks names, targets and that every update is copyless.
void validate_sst(const SSTSpec& sst);
Word run_sst_naive(const SSTSpec& sst, const Word& w);

// Letter-to-update rational function over the transition monoid, plus its
// update alphabet. Update letter i is named "d<i>".
struct StructuredSST {
  SSTSpec sst;
  RationalFn g;
  std::vector<WordUpdate> updates;
  std::vector<int> state_of;  // transition-monoid element applied to the initial state
  int sink;                   // state index standing for a missing transition
  CompiledRational compiled;
};

StructuredSST structure_sst(const SSTSpec& sst);
Word run_sst_structured(const StructuredSST& s, const Word& w);

// Output register 1 after applying the update word g(w) to the empty valuation.
Word fot_pipeline_eval(const RationalFn& g, const std::map<std::string, WordUpdate>& delta, std::size_t k,
                       const Word& w);

SSTSpec parse_sst(const std::string& text);
std::string render_sst(const SSTSpec& sst);

namespace ssts {
// One state, 1 := [$1, "a"] on every letter a.
SSTSpec identity_copy(const std::vector<std::string>& alphabet);
// One state, 1 := ["a", $1] on every letter a.
SSTSpec reverse(const std::vector<std::string>& alphabet);
// Two states: append letters up to and including the first `flip`, prepend afterwards.
SSTSpec flip_after(const std::vector<std::string>& alphabet, const std::string& flip);
// Two registers: each `held` letter is emitted only when the next one arrives.
SSTSpec delay(const std::vector<std::string>& alphabet, const std::string& held);
}  // namespace ssts

}  // namespace listfn

#endif  // LISTFN_SST_HPP
