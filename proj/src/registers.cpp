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

#include "listfn/registers.hpp"

#include <cctype>
#include <deque>
#include <functional>

namespace listfn {

Abstraction identity_abstraction(std::size_t k) {
  Abstraction a;
  for (std::size_t i = 0; i < k; ++i) a.rhs.push_back({static_cast<int>(i)});
  return a;
}

Abstraction abstraction_product(const Abstraction& a, const Abstraction& b) {
  Abstraction out;
  for (const auto& r : b.rhs) {
    std::vector<int> acc;
    for (int j : r) {
      const auto& sub = a.rhs.at(static_cast<std::size_t>(j));
      acc.insert(acc.end(), sub.begin(), sub.end());
    }
    out.rhs.push_back(std::move(acc));
  }
  return out;
}

bool is_nonduplicating(const Abstraction& a) {
  std::vector<bool> seen(a.k(), false);
  for (const auto& r : a.rhs)
    for (int j : r) {
      if (seen[static_cast<std::size_t>(j)]) return false;
      seen[static_cast<std::size_t>(j)] = true;
    }
  return true;
}

bool is_monotone(const Abstraction& a) {
  int last = -1;
  for (const auto& r : a.rhs)
    for (int j : r) {
      if (j <= last) return false;
      last = j;
    }
  return true;
}

std::vector<std::pair<int, int>> dependency_graph(const Abstraction& a) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < a.k(); ++i)
    for (int j : a.rhs[i]) edges.emplace_back(static_cast<int>(i), j);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::set<int> temporary_registers(const Abstraction& a) {
  std::set<int> out;
  for (std::size_t i = 0; i < a.k(); ++i) {
    const auto& r = a.rhs[i];
    if (std::find(r.begin(), r.end(), static_cast<int>(i)) == r.end()) out.insert(static_cast<int>(i));
  }
  return out;
}

std::vector<std::vector<int>> register_components(const Abstraction& a) {
  std::vector<int> parent(a.k());
  for (std::size_t i = 0; i < a.k(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& [i, j] : dependency_graph(a)) parent[static_cast<std::size_t>(find(i))] = find(j);
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < a.k(); ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Abstraction> enumerate_abstractions(std::size_t k) {
  // target[j] in [-1, k): the right hand side holding register j, non-decreasing over used j.
  std::vector<Abstraction> out;
  std::vector<int> target(k, -1);
  std::function<void(std::size_t, int)> go = [&](std::size_t j, int floor) {
    if (j == k) {
      Abstraction a;
      a.rhs.assign(k, {});
      for (std::size_t r = 0; r < k; ++r)
        if (target[r] >= 0) a.rhs[static_cast<std::size_t>(target[r])].push_back(static_cast<int>(r));
      out.push_back(std::move(a));
      return;
    }
    target[j] = -1;
    go(j + 1, floor);
    for (int t = floor; t < static_cast<int>(k); ++t) {
      target[j] = t;
      go(j + 1, t);
    }
    target[j] = -1;
  };
  go(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

int AbstractionMonoid::index_of(const Abstraction& a) const {
  auto it = std::find(elements.begin(), elements.end(), a);
  if (it == elements.end()) throw EvalError("abstraction " + render_abstraction(a) + " is outside the monoid");
  return static_cast<int>(it - elements.begin());
}

AbstractionMonoid generated_abstraction_monoid(std::size_t k, const std::vector<Abstraction>& gens) {
  std::map<Abstraction, int> index;
  std::vector<Abstraction> elems{identity_abstraction(k)};
  index[elems[0]] = 0;
  std::set<Abstraction> gen_set(gens.begin(), gens.end());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gen_set) {
      Abstraction p = abstraction_product(elems[i], g);
      if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(std::move(p));
    }
  const std::size_t n = elems.size();
  std::vector<int> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = index.at(abstraction_product(elems[i], elems[j]));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("t" + std::to_string(i));
  AbstractionMonoid out{std::move(elems), FiniteMonoid(std::move(names), std::move(table), 0)};
  return out;
}

std::string render_abstraction(const Abstraction& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.k(); ++i) {
    if (i) s += ", ";
    s += std::to_string(i + 1) + ":=[";
    for (std::size_t j = 0; j < a.rhs[i].size(); ++j) s += (j ? "," : "") + std::to_string(a.rhs[i][j] + 1);
    s += "]";
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

Word parse_literal(const std::string& text) {
  Word out;
  if (text.find(' ') != std::string::npos) {
    std::string cur;
    for (char c : text) {
      if (c == ' ') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
  } else {
    for (char c : text) out.emplace_back(1, c);
  }
  return out;
}

namespace {

struct UpdateLexer {
  const std::string& s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(const std::string& tok) {
    ws();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!eat(tok)) throw SyntaxError("update: expected '" + tok + "'", i);
  }
  std::size_t number() {
    ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw SyntaxError("update: expected a register number", i);
    return std::stoul(s.substr(start, i - start));
  }
  std::string quoted() {
    ws();
    if (i >= s.size() || s[i] != '"') throw SyntaxError("update: expected a quoted literal or $register", i);
    std::size_t end = s.find('"', i + 1);
    if (end == std::string::npos) throw SyntaxError("update: unterminated literal", i);
    std::string out = s.substr(i + 1, end - i - 1);
    i = end + 1;
    return out;
  }
};

std::size_t register_number(UpdateLexer& lx, std::size_t k) {
  std::size_t pos = lx.i;
  std::size_t n = lx.number();
  if (n < 1 || n > k) throw SyntaxError("update: register " + std::to_string(n) + " out of range", pos);
  return n - 1;
}

}  // namespace

WordUpdate parse_word_update(const std::string& text, std::size_t k) {
  WordUpdate u;
  for (std::size_t i = 0; i < k; ++i) u.rhs.push_back({RegSym<Word>::r(static_cast<int>(i))});
  UpdateLexer lx{text};
  lx.ws();
  if (lx.i == text.size()) return u;
  std::vector<bool> assigned(k, false);
  do {
    std::size_t target = register_number(lx, k);
    if (assigned[target]) throw SyntaxError("update: register assigned twice", lx.i);
    assigned[target] = true;
    lx.expect(":=");
    lx.expect("[");
    Rhs<Word> rhs;
    if (!lx.eat("]")) {
      do {
        if (lx.eat("$"))
          rhs.push_back(RegSym<Word>::r(static_cast<int>(register_number(lx, k))));
        else
          rhs.push_back(RegSym<Word>::m(parse_literal(lx.quoted())));
      } while (lx.eat(","));
      lx.expect("]");
    }
    u.rhs[target] = normalise(FreeMonoid{}, rhs);
  } while (lx.eat("|"));
  lx.ws();
  if (lx.i != text.size()) throw SyntaxError("update: trailing input", lx.i);
  return u;
}

std::string render_literal(const Word& w) {
  bool multi = std::any_of(w.begin(), w.end(), [](const std::string& c) { return c.size() != 1; });
  if (!multi) return join_word(w, "");
  return join_word(w, " ") + (w.size() == 1 ? " " : "");
}

std::string render_word_update(const WordUpdate& u) {
  std::string s;
  for (std::size_t i = 0; i < u.k(); ++i) {
    if (i) s += " | ";
    s += std::to_string(i + 1) + " := [";
    for (std::size_t j = 0; j < u.rhs[i].size(); ++j) {
      if (j) s += ", ";
      const auto& x = u.rhs[i][j];
      if (x.is_reg()) {
        s += "$" + std::to_string(x.reg + 1);
      } else {
        s += "\"" + render_literal(x.elem) + "\"";
      }
    }
    s += "]";
  }
  return s;
}

}  // namespace listfn
