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

#include <algorithm>
#include <functional>

#include "listfn/error.hpp"
#include "listfn/logic.hpp"

namespace listfn {

namespace {

Path extend(const Path& p, int i) {
  Path q = p;
  q.push_back(i);
  return q;
}

class Encoder {
 public:
  explicit Encoder(const Type& t) { s_.vocab = encoding_vocabulary(t); }

  int emit(const Value& v, const Type& ty, const Path& path) {
    int id = static_cast<int>(s_.universe.size());
    s_.universe.push_back(id);
    tag(v, ty, path, id);
    return id;
  }

  Structure take() { return std::move(s_); }

 private:
  void tag(const Value& v, const Type& ty, const Path& path, int id) {
    s_.rels[type_predicate_name(path)].insert({id});
    switch (ty.kind()) {
      case Type::Kind::Atom:
      case Type::Kind::Bot:
        return;
      case Type::Kind::FinSet:
        s_.rels[type_predicate_name(extend(path, ty.name_index(v.name())))].insert({id});
        return;
      case Type::Kind::Sum:
        if (v.kind() == Value::Kind::InL)
          tag(v.inner(), ty.left(), extend(path, 0), id);
        else
          tag(v.inner(), ty.right(), extend(path, 1), id);
        return;
      case Type::Kind::Prod: {
        int a = emit(v.fst(), ty.left(), extend(path, 0));
        int b = emit(v.snd(), ty.right(), extend(path, 1));
        s_.rels["pare"].insert({id, a});
        s_.rels["pare"].insert({id, b});
        s_.rels["sib"].insert({a, b});
        return;
      }
      case Type::Kind::List: {
        std::vector<int> kids;
        for (const auto& x : v.items()) kids.push_back(emit(x, ty.elem(), extend(path, 0)));
        for (std::size_t i = 0; i < kids.size(); ++i) {
          s_.rels["pare"].insert({id, kids[i]});
          for (std::size_t j = i + 1; j < kids.size(); ++j) s_.rels["sib"].insert({kids[i], kids[j]});
        }
        return;
      }
    }
  }

  Structure s_;
};

class Decoder {
 public:
  explicit Decoder(const Structure& s) : s_(s) {
    for (const auto& name : {"pare", "sib"})
      if (!s.vocab.count(name) || s.vocab.at(name) != 2)
        throw EvalError(std::string("not an encoding: missing binary relation '") + name + "'");
    for (int e : s.universe) {
      parent_[e] = -1;
      children_[e];
    }
    for (const auto& t : rel("pare")) {
      if (parent_[t[1]] != -1) throw EvalError("not an encoding: node " + std::to_string(t[1]) + " has two parents");
      parent_[t[1]] = t[0];
      children_[t[0]].push_back(t[1]);
    }
    for (const auto& t : rel("sib")) {
      if (t[0] == t[1]) throw EvalError("not an encoding: sib is reflexive on node " + std::to_string(t[0]));
      if (parent_[t[0]] == -1 || parent_[t[0]] != parent_[t[1]])
        throw EvalError("not an encoding: sib relates non-siblings " + std::to_string(t[0]) + " and " +
                        std::to_string(t[1]));
    }
    std::vector<int> roots;
    for (int e : s.universe)
      if (parent_[e] == -1) roots.push_back(e);
    if (roots.size() != 1)
      throw EvalError("not an encoding: expected one root, found " + std::to_string(roots.size()));
    root_ = roots[0];
    // Order children by sib, which must be a strict linear order.
    for (auto& [p, kids] : children_) {
      std::map<int, int> before;
      for (int c : kids) before[c] = 0;
      for (int a : kids)
        for (int b : kids)
          if (s.holds("sib", {a, b})) ++before[b];
      std::sort(kids.begin(), kids.end(), [&](int a, int b) { return before[a] < before[b]; });
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (before[kids[i]] != static_cast<int>(i))
          throw EvalError("not an encoding: sib is not a linear order below node " + std::to_string(p));
        for (std::size_t j = i + 1; j < kids.size(); ++j)
          if (!s.holds("sib", {kids[i], kids[j]}))
            throw EvalError("not an encoding: sib is not transitive below node " + std::to_string(p));
      }
    }
    // Reachability rules out pare-cycles detached from the root.
    std::size_t seen = 0;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      ++seen;
      for (int c : children_[n]) stack.push_back(c);
    }
    if (seen != s.universe.size()) throw EvalError("not an encoding: parent relation is not a tree");
  }

  Value decode(const Type& t) {
    Value v = node(root_, t, {});
    return v;
  }
  const std::vector<int>& order() const { return order_; }

 private:
  const std::set<Tuple>& rel(const std::string& name) const {
    static const std::set<Tuple> none;
    auto it = s_.rels.find(name);
    return it == s_.rels.end() ? none : it->second;
  }
  bool has(const Path& p, int n) const { return s_.holds(type_predicate_name(p), {n}); }
  std::string where(int n, const Path& p) const {
    return "node " + std::to_string(n) + " (type predicate " + type_predicate_name(p) + ")";
  }

  Value node(int n, const Type& t, const Path& p) {
    order_.push_back(n);
    return body(n, t, p);
  }

  Value body(int n, const Type& t, const Path& p) {
    if (!has(p, n)) throw EvalError("not an encoding: missing type predicate on " + where(n, p));
    const auto& kids = children_[n];
    auto leaf = [&] {
      if (!kids.empty()) throw EvalError("not an encoding: leaf has children at " + where(n, p));
    };
    switch (t.kind()) {
      case Type::Kind::Atom:
        leaf();
        return Value::sym(t.names()[0]);
      case Type::Kind::Bot:
        leaf();
        return Value::bot();
      case Type::Kind::FinSet: {
        leaf();
        int found = -1;
        for (std::size_t i = 0; i < t.arity(); ++i)
          if (has(extend(p, static_cast<int>(i)), n)) {
            if (found >= 0) throw EvalError("not an encoding: two atoms on " + where(n, p));
            found = static_cast<int>(i);
          }
        if (found < 0) throw EvalError("not an encoding: no atom predicate on " + where(n, p));
        return Value::sym(t.names()[static_cast<std::size_t>(found)]);
      }
      case Type::Kind::Sum: {
        bool l = has(extend(p, 0), n), r = has(extend(p, 1), n);
        if (l == r) throw EvalError("not an encoding: ambiguous sum at " + where(n, p));
        return l ? Value::inl(body(n, t.left(), extend(p, 0))) : Value::inr(body(n, t.right(), extend(p, 1)));
      }
      case Type::Kind::Prod: {
        if (kids.size() != 2) throw EvalError("not an encoding: pair without two children at " + where(n, p));
        int a = kids[0], b = kids[1];
        Value x = node(a, t.left(), extend(p, 0));
        Value y = node(b, t.right(), extend(p, 1));
        return Value::pair(x, y);
      }
      case Type::Kind::List: {
        std::vector<Value> items;
        std::vector<int> ks = kids;
        for (int c : ks) items.push_back(node(c, t.elem(), extend(p, 0)));
        return Value::list(std::move(items));
      }
    }
    throw EvalError("not an encoding");
  }

  const Structure& s_;
  std::map<int, int> parent_;
  std::map<int, std::vector<int>> children_;
  int root_ = -1;
  std::vector<int> order_;
};

}  // namespace

Vocabulary encoding_vocabulary(const Type& t) {
  Vocabulary v{{"pare", 2}, {"sib", 2}};
  for (const auto& n : type_nodes(canonical(t))) v[type_predicate_name(n.path)] = 1;
  return v;
}

Structure encode_value(const Value& v, const Type& t) {
  Type ct = canonical(t);
  if (!check_value(v, ct)) throw TypeError("value " + render_value(v) + " does not inhabit " + render_type(ct));
  Encoder e(ct);
  e.emit(v, ct, {});
  Structure s = e.take();
  for (const auto& [name, arity] : s.vocab) s.rels[name];
  return s;
}

Value decode_structure(const Structure& s, const Type& t) {
  Type ct = canonical(t);
  s.validate();
  Decoder d(s);
  Value v = d.decode(ct);
  // Shape is right; the remaining relations must agree exactly with a
  // re-encoding under the node correspondence found while decoding.
  Structure e = encode_value(v, ct);
  const auto& order = d.order();
  if (order.size() != s.universe.size()) throw EvalError("not an encoding: unused nodes");
  for (const auto& [name, arity] : e.vocab) {
    if (!s.vocab.count(name)) throw EvalError("not an encoding: missing relation '" + name + "'");
    std::set<Tuple> mapped;
    for (const auto& tup : e.rels.at(name)) {
      Tuple m;
      for (int x : tup) m.push_back(order[static_cast<std::size_t>(x)]);
      mapped.insert(m);
    }
    auto it = s.rels.find(name);
    const std::set<Tuple> empty;
    const std::set<Tuple>& have = it == s.rels.end() ? empty : it->second;
    if (mapped != have) {
      std::vector<Tuple> diff;
      std::set_symmetric_difference(mapped.begin(), mapped.end(), have.begin(), have.end(), std::back_inserter(diff));
      std::string tuple;
      for (int x : diff.front()) tuple += (tuple.empty() ? "" : ",") + std::to_string(x);
      throw EvalError("not an encoding: relation " + name + " disagrees on (" + tuple + ")");
    }
  }
  for (const auto& [name, arity] : s.vocab)
    if (!e.vocab.count(name) && s.rels.count(name) && !s.rels.at(name).empty())
      throw EvalError("not an encoding: unexpected relation '" + name + "'");
  return v;
}

std::set<Tuple> derived_next_sibling(const Structure& s) {
  std::set<Tuple> out;
  auto it = s.rels.find("sib");
  if (it == s.rels.end()) return out;
  const auto& sib = it->second;
  for (const auto& t : sib) {
    bool covered = false;
    for (int z : s.universe)
      if (sib.count({t[0], z}) && sib.count({z, t[1]})) {
        covered = true;
        break;
      }
    if (!covered) out.insert(t);
  }
  return out;
}

Structure word_structure(const Word& w, const std::vector<std::string>& alphabet) {
  Structure s;
  s.vocab = {{"lt", 2}, {"S", 2}};
  for (const auto& a : alphabet) s.vocab["Q_" + a] = 1;
  for (const auto& [name, arity] : s.vocab) s.rels[name];
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i) {
    s.universe.push_back(i);
    if (std::find(alphabet.begin(), alphabet.end(), w[static_cast<std::size_t>(i)]) == alphabet.end())
      throw TypeError("letter '" + w[static_cast<std::size_t>(i)] + "' is not in the alphabet");
    s.rels["Q_" + w[static_cast<std::size_t>(i)]].insert({i});
    if (i + 1 < n) s.rels["S"].insert({i, i + 1});
    for (int j = i + 1; j < n; ++j) s.rels["lt"].insert({i, j});
  }
  return s;
}

Word decode_word_structure(const Structure& s, const std::vector<std::string>& alphabet) {
  std::map<int, int> before;
  for (int e : s.universe) before[e] = 0;
  for (int a : s.universe)
    for (int b : s.universe)
      if (s.holds("lt", {a, b})) ++before[b];
  std::vector<int> pos(s.universe);
  std::sort(pos.begin(), pos.end(), [&](int a, int b) { return before[a] < before[b]; });
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (before[pos[i]] != static_cast<int>(i)) throw EvalError("not a word structure: lt is not a linear order");
    for (std::size_t j = 0; j < pos.size(); ++j)
      if (s.holds("lt", {pos[i], pos[j]}) != (i < j)) throw EvalError("not a word structure: lt is not a linear order");
    for (std::size_t j = 0; j < pos.size(); ++j)
      if (s.holds("S", {pos[i], pos[j]}) != (j == i + 1))
        throw EvalError("not a word structure: S is not the successor of lt");
  }
  Word w;
  for (int e : pos) {
    std::vector<std::string> letters;
    for (const auto& a : alphabet)
      if (s.holds("Q_" + a, {e})) letters.push_back(a);
    if (letters.size() != 1) throw EvalError("not a word structure: position without exactly one letter");
    w.push_back(letters[0]);
  }
  return w;
}

}  // namespace listfn
