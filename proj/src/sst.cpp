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

#include "listfn/sst.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "listfn/error.hpp"

namespace listfn {

namespace {

int index_in(const std::vector<std::string>& xs, const std::string& x) {
  auto it = std::find(xs.begin(), xs.end(), x);
  return it == xs.end() ? -1 : static_cast<int>(it - xs.begin());
}

}  // namespace

void validate_sst(const SSTSpec& sst) {
  if (std::set<std::string>(sst.states.begin(), sst.states.end()).size() != sst.states.size())
    throw TypeError("sst: duplicate state names");
  if (index_in(sst.states, sst.initial) < 0) throw TypeError("sst: unknown initial state '" + sst.initial + "'");
  if (sst.registers == 0) throw TypeError("sst: needs at least one register");
  if (sst.result >= sst.registers) throw TypeError("sst: result register out of range");
  (void)Type::finset(sst.input);
  (void)Type::finset(sst.output);
  FreeMonoid gamma{sst.output};
  for (const auto& [key, val] : sst.delta) {
    if (index_in(sst.states, key.first) < 0 || index_in(sst.states, val.first) < 0)
      throw TypeError("sst: transition mentions an unknown state");
    if (index_in(sst.input, key.second) < 0) throw TypeError("sst: transition on unknown letter '" + key.second + "'");
    check_update(gamma, val.second, sst.registers);
    if (!is_nonduplicating(val.second)) throw TypeError("sst: update on (" + key.first + ", " + key.second + ") copies a register");
  }
}

Word run_sst_naive(const SSTSpec& sst, const Word& w) {
  FreeMonoid gamma{sst.output};
  std::string state = sst.initial;
  RegValuation<Word> v = empty_valuation(gamma, sst.registers);
  for (const auto& a : w) {
    auto it = sst.delta.find({state, a});
    if (it == sst.delta.end()) throw EvalError("sst: no transition from state '" + state + "' on letter '" + a + "'");
    v = apply_update(gamma, v, it->second.second);
    state = it->second.first;
  }
  return v[sst.result];
}

StructuredSST structure_sst(const SSTSpec& sst) {
  validate_sst(sst);
  const int n = static_cast<int>(sst.states.size());
  const int sink = n;
  using Fn = std::vector<int>;
  std::vector<Fn> letter_fn;
  for (const auto& a : sst.input) {
    Fn f(static_cast<std::size_t>(n + 1), sink);
    for (int q = 0; q < n; ++q) {
      auto it = sst.delta.find({sst.states[static_cast<std::size_t>(q)], a});
      if (it != sst.delta.end()) f[static_cast<std::size_t>(q)] = index_in(sst.states, it->second.first);
    }
    letter_fn.push_back(std::move(f));
  }
  // Transition monoid: x then y.
  auto then = [](const Fn& x, const Fn& y) {
    Fn out(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) out[q] = y[static_cast<std::size_t>(x[q])];
    return out;
  };
  Fn id(static_cast<std::size_t>(n + 1));
  for (int q = 0; q <= n; ++q) id[static_cast<std::size_t>(q)] = q;
  std::vector<Fn> elems{id};
  std::map<Fn, int> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& f : letter_fn) {
      Fn p = then(elems[i], f);
      if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(std::move(p));
    }
  const std::size_t m = elems.size();
  std::vector<int> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = index.at(then(elems[i], elems[j]));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("m" + std::to_string(i));
  FiniteMonoid monoid(names, table, 0);

  std::vector<WordUpdate> updates;
  std::map<WordUpdate, int> update_index;
  for (const auto& [key, val] : sst.delta)
    if (update_index.emplace(val.second, static_cast<int>(updates.size())).second) updates.push_back(val.second);
  std::vector<std::string> gamma;
  for (std::size_t i = 0; i < updates.size(); ++i) gamma.push_back("d" + std::to_string(i));
  if (gamma.empty()) gamma.push_back("d0");  // no transitions at all: the alphabet is never used

  const int init = index_in(sst.states, sst.initial);
  std::vector<int> state_of;
  for (const auto& e : elems) state_of.push_back(e[static_cast<std::size_t>(init)]);
  std::vector<int> h;
  for (const auto& f : letter_fn) h.push_back(index.at(f));
  std::vector<Word> out(m * sst.input.size() * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t a = 0; a < sst.input.size(); ++a) {
      int q = state_of[x];
      if (q == sink) continue;
      auto it = sst.delta.find({sst.states[static_cast<std::size_t>(q)], sst.input[a]});
      if (it == sst.delta.end()) continue;
      Word piece{gamma[static_cast<std::size_t>(update_index.at(it->second.second))]};
      for (std::size_t y = 0; y < m; ++y) out[(x * sst.input.size() + a) * m + y] = piece;
    }
  RationalFn g(sst.input, gamma, monoid, h, std::move(out));
  CompiledRational compiled = compile_rational(g);
  return {sst, std::move(g), std::move(updates), std::move(state_of), sink, std::move(compiled)};
}

Word run_sst_structured(const StructuredSST& s, const Word& w) {
  Homomorphism h = s.g.hom();
  std::vector<int> letters = h.letters(w);
  if (s.state_of[static_cast<std::size_t>(h.apply(letters))] == s.sink)
    throw EvalError("sst: the run has no transition for some letter");
  Word ds = eval_pipeline_word(s.compiled.pipeline, w);
  std::vector<WordUpdate> us;
  us.reserve(ds.size());
  for (const auto& d : ds) us.push_back(s.updates.at(std::stoul(d.substr(1))));
  FreeMonoid gamma{s.sst.output};
  return apply_update_sequence(gamma, us, s.sst.registers)[s.sst.result];
}

Word fot_pipeline_eval(const RationalFn& g, const std::map<std::string, WordUpdate>& delta, std::size_t k,
                       const Word& w) {
  std::vector<std::string> alphabet;
  for (const auto& [name, u] : delta) {
    for (const auto& r : u.rhs)
      for (const auto& x : r)
        if (!x.is_reg()) alphabet.insert(alphabet.end(), x.elem.begin(), x.elem.end());
  }
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  CompiledRational c = compile_rational(g);
  std::vector<WordUpdate> us;
  for (const auto& d : eval_pipeline_word(c.pipeline, w)) {
    auto it = delta.find(d);
    if (it == delta.end()) throw EvalError("update letter '" + d + "' has no update");
    us.push_back(it->second);
  }
  return apply_update_sequence(FreeMonoid{alphabet}, us, k)[0];
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kSSTHeader = "listfn-sst 1";

std::vector<std::string> words_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

SSTSpec parse_sst(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSSTHeader) throw SyntaxError("missing sst header", 0);
  SSTSpec sst;
  bool have_initial = false;
  std::size_t lineno = 1;
  std::vector<std::string> pending;  // transitions parsed once the register count is known
  while (std::getline(in, line)) {
    ++lineno;
    auto ws = words_of(line);
    if (ws.empty() || ws[0][0] == ';') continue;
    const std::string& key = ws[0];
    std::vector<std::string> rest(ws.begin() + 1, ws.end());
    if (key == "input") {
      sst.input = rest;
    } else if (key == "output") {
      sst.output = rest;
    } else if (key == "states") {
      sst.states = rest;
    } else if (key == "initial" && rest.size() == 1) {
      sst.initial = rest[0];
      have_initial = true;
    } else if (key == "registers" && rest.size() == 1) {
      sst.registers = std::stoul(rest[0]);
    } else if (key == "result" && rest.size() == 1) {
      sst.result = std::stoul(rest[0]) - 1;
    } else if (ws.size() >= 4 && ws[2] == "->") {
      pending.push_back(line);
    } else {
      throw SyntaxError("sst line " + std::to_string(lineno) + ": unrecognised", 0);
    }
  }
  if (!have_initial) throw SyntaxError("sst: missing initial state", 0);
  for (const auto& l : pending) {
    auto colon = l.find(':');
    auto head = words_of(l.substr(0, colon));
    if (head.size() != 4) throw SyntaxError("sst transition: expected 'state letter -> state : update'", 0);
    std::string upd = colon == std::string::npos ? "" : l.substr(colon + 1);
    auto key = std::make_pair(head[0], head[1]);
    if (sst.delta.count(key)) throw SyntaxError("sst: duplicate transition for (" + head[0] + ", " + head[1] + ")", 0);
    sst.delta[key] = {head[3], parse_word_update(upd, sst.registers)};
  }
  validate_sst(sst);
  return sst;
}

std::string render_sst(const SSTSpec& sst) {
  std::ostringstream out;
  out << kSSTHeader << "\n";
  out << "input " << join_word(sst.input, " ") << "\n";
  out << "output " << join_word(sst.output, " ") << "\n";
  out << "registers " << sst.registers << "\n";
  out << "states " << join_word(sst.states, " ") << "\n";
  out << "initial " << sst.initial << "\n";
  out << "result " << sst.result + 1 << "\n";
  for (const auto& [key, val] : sst.delta)
    out << key.first << " " << key.second << " -> " << val.first << " : " << render_word_update(val.second) << "\n";
  return out.str();
}

namespace ssts {

namespace {
SSTSpec one_state(const std::vector<std::string>& alphabet, std::size_t k) {
  SSTSpec s;
  s.states = {"q"};
  s.initial = "q";
  s.input = alphabet;
  s.output = alphabet;
  s.registers = k;
  return s;
}
WordUpdate single(Rhs<Word> r) { return WordUpdate{{std::move(r)}}; }
}  // namespace

SSTSpec identity_copy(const std::vector<std::string>& alphabet) {
  SSTSpec s = one_state(alphabet, 1);
  for (const auto& a : alphabet) s.delta[{"q", a}] = {"q", single({RegSym<Word>::r(0), RegSym<Word>::m({a})})};
  return s;
}

SSTSpec reverse(const std::vector<std::string>& alphabet) {
  SSTSpec s = one_state(alphabet, 1);
  for (const auto& a : alphabet) s.delta[{"q", a}] = {"q", single({RegSym<Word>::m({a}), RegSym<Word>::r(0)})};
  return s;
}

SSTSpec flip_after(const std::vector<std::string>& alphabet, const std::string& flip) {
  SSTSpec s = one_state(alphabet, 1);
  s.states = {"p", "q"};
  s.initial = "p";
  s.delta.clear();
  for (const auto& a : alphabet) {
    s.delta[{"p", a}] = {a == flip ? "q" : "p", single({RegSym<Word>::r(0), RegSym<Word>::m({a})})};
    s.delta[{"q", a}] = {"q", single({RegSym<Word>::m({a}), RegSym<Word>::r(0)})};
  }
  return s;
}

SSTSpec delay(const std::vector<std::string>& alphabet, const std::string& held) {
  SSTSpec s = one_state(alphabet, 2);
  for (const auto& a : alphabet) {
    WordUpdate u;
    if (a == held)
      u.rhs = {{RegSym<Word>::r(0), RegSym<Word>::r(1)}, {RegSym<Word>::m({a})}};
    else
      u.rhs = {{RegSym<Word>::r(0), RegSym<Word>::m({a})}, {RegSym<Word>::r(1)}};
    s.delta[{"q", a}] = {"q", u};
  }
  return s;
}

}  // namespace ssts

}  // namespace listfn
