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

#ifndef LISTFN_TESTS_SUPPORT_HPP
#define LISTFN_TESTS_SUPPORT_HPP

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "listfn/types.hpp"
#include "listfn/value.hpp"

namespace testing {

inline listfn::Type ty(const std::string& s) { return listfn::parse_type(s); }
inline listfn::Value val(const std::string& s, const listfn::Type& t) { return listfn::parse_value(s, t); }
inline listfn::Value val(const std::string& s, const std::string& t) { return listfn::parse_value(s, ty(t)); }

inline listfn::Word letters(const std::string& s) {
  listfn::Word w;
  for (char c : s) w.emplace_back(1, c);
  return w;
}

// Every word of length <= n over the alphabet, shortest first.
inline std::vector<listfn::Word> all_words(const std::vector<std::string>& alphabet, std::size_t n) {
  std::vector<listfn::Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& a : alphabet) {
        listfn::Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

// Types used by the round-trip and soundness properties.
inline const std::vector<listfn::Type>& type_panel() {
  static const std::vector<listfn::Type> p = {
      ty("{a,b}*"),
      ty("{a,b}**"),
      ty("{a}*×{b}*"),
      ty("({a}+{b})×{c}*"),
      ty("({a,b}*+{c})*×({a}×{b}*)*"),
      ty("({a}*+bot)*"),
  };
  return p;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace testing

#endif  // LISTFN_TESTS_SUPPORT_HPP
