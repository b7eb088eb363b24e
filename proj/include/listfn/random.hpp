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

#ifndef LISTFN_RANDOM_HPP
#define LISTFN_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "listfn/registers.hpp"
#include "listfn/value.hpp"

// Seeded generators shared by the check command and the test suites.
namespace listfn::gen {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent seed for case i of a run, so any case replays on its own.
inline std::uint64_t case_seed(std::uint64_t seed, std::uint64_t i) { return splitmix64(seed ^ splitmix64(i)); }

// Linear ramp from 0 (first case) to max (last case).
inline std::size_t ramp(std::size_t i, std::size_t count, std::size_t max) {
  return count <= 1 ? max : i * max / (count - 1);
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Word random_word(const std::vector<std::string>& alphabet, std::size_t n, std::mt19937_64& rng) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(alphabet[uniform(rng, 0, alphabet.size() - 1)]);
  return w;
}

// Random update with the given register skeleton: short words are inserted
// around the registers of each right hand side.
inline WordUpdate random_update_like(const Abstraction& tau, const std::vector<std::string>& gamma,
                                     std::mt19937_64& rng, std::size_t max_literal = 2) {
  WordUpdate u;
  for (const auto& regs : tau.rhs) {
    Rhs<Word> r;
    auto lit = [&] {
      Word w = random_word(gamma, uniform(rng, 0, max_literal), rng);
      if (!w.empty()) r.push_back(RegSym<Word>::m(std::move(w)));
    };
    lit();
    for (int j : regs) {
      r.push_back(RegSym<Word>::r(j));
      lit();
    }
    u.rhs.push_back(std::move(r));
  }
  return u;
}

// Uniform over the nonduplicating monotone updates' abstractions, then
// random literals.
inline WordUpdate random_update(std::size_t k, const std::vector<std::string>& gamma, std::mt19937_64& rng) {
  static thread_local std::vector<std::vector<Abstraction>> cache;
  if (cache.size() <= k) cache.resize(k + 1);
  if (cache[k].empty()) cache[k] = enumerate_abstractions(k);
  const auto& all = cache[k];
  return random_update_like(all[uniform(rng, 0, all.size() - 1)], gamma, rng);
}

inline std::vector<WordUpdate> random_updates(std::size_t k, std::size_t n, const std::vector<std::string>& gamma,
                                              std::mt19937_64& rng) {
  std::vector<WordUpdate> us;
  for (std::size_t i = 0; i < n; ++i) us.push_back(random_update(k, gamma, rng));
  return us;
}

inline RegValuation<Word> random_valuation(std::size_t k, const std::vector<std::string>& gamma, std::mt19937_64& rng,
                                           std::size_t max_len = 4) {
  RegValuation<Word> v;
  for (std::size_t i = 0; i < k; ++i) v.push_back(random_word(gamma, uniform(rng, 0, max_len), rng));
  return v;
}

}  // namespace listfn::gen

#endif  // LISTFN_RANDOM_HPP
