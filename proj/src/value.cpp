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

#include "listfn/value.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <utility>

#include "listfn/error.hpp"

namespace listfn {

struct Value::Node {
  Kind kind;
  std::string name;
  std::vector<Value> kids;
};

namespace {

const Value& bot_value() {
  static const Value v = Value::bot();
  return v;
}

}  // namespace

Value::Value() : Value(bot_value()) {}

Value Value::sym(std::string name) {
  return Value(std::make_shared<const Node>(Node{Kind::Sym, std::move(name), {}}));
}
Value Value::pair(Value fst, Value snd) {
  return Value(std::make_shared<const Node>(Node{Kind::Pair, {}, {std::move(fst), std::move(snd)}}));
}
Value Value::inl(Value v) {
  return Value(std::make_shared<const Node>(Node{Kind::InL, {}, {std::move(v)}}));
}
Value Value::inr(Value v) {
  return Value(std::make_shared<const Node>(Node{Kind::InR, {}, {std::move(v)}}));
}
Value Value::list(std::vector<Value> items) {
  return Value(std::make_shared<const Node>(Node{Kind::List, {}, std::move(items)}));
}
Value Value::bot() { return Value(std::make_shared<const Node>(Node{Kind::Bot, {}, {}})); }

Value::Kind Value::kind() const { return node_->kind; }
const std::string& Value::name() const { return node_->name; }
const Value& Value::fst() const { return node_->kids.at(0); }
const Value& Value::snd() const { return node_->kids.at(1); }
const Value& Value::inner() const { return node_->kids.at(0); }
const std::vector<Value>& Value::items() const { return node_->kids; }

int compare(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (a.kind() == Value::Kind::Sym) return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  std::size_t n = std::min(ka.size(), kb.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(ka[i], kb[i])) return c;
  if (ka.size() == kb.size()) return 0;
  return ka.size() < kb.size() ? -1 : 1;
}

bool check_value(const Value& v, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Atom:
    case Type::Kind::FinSet:
      return v.kind() == Value::Kind::Sym && t.has_name(v.name());
    case Type::Kind::Bot:
      return v.kind() == Value::Kind::Bot;
    case Type::Kind::Sum:
      if (v.kind() == Value::Kind::InL) return check_value(v.inner(), t.left());
      if (v.kind() == Value::Kind::InR) return check_value(v.inner(), t.right());
      return false;
    case Type::Kind::Prod:
      return v.kind() == Value::Kind::Pair && check_value(v.fst(), t.left()) &&
             check_value(v.snd(), t.right());
    case Type::Kind::List:
      if (v.kind() != Value::Kind::List) return false;
      return std::all_of(v.items().begin(), v.items().end(),
                         [&](const Value& x) { return check_value(x, t.elem()); });
  }
  return false;
}

std::size_t value_size(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Sym:
    case Value::Kind::Bot:
      return 1;
    case Value::Kind::Pair:
      return value_size(v.fst()) + value_size(v.snd());
    case Value::Kind::InL:
    case Value::Kind::InR:
      return value_size(v.inner());
    case Value::Kind::List: {
      std::size_t n = 1;
      for (const auto& x : v.items()) n += value_size(x);
      return n;
    }
  }
  return 0;
}

std::size_t min_value_size(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Sum:
      return std::min(min_value_size(t.left()), min_value_size(t.right()));
    case Type::Kind::Prod:
      return min_value_size(t.left()) + min_value_size(t.right());
    default:
      return 1;
  }
}

// ---------------------------------------------------------------------------
// Enumeration by exact size.

namespace {

class Enumerator {
 public:
  const std::vector<Value>& values(const Type& t, std::size_t n) {
    auto key = std::make_pair(render_type(t), n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Value> out;
    switch (t.kind()) {
      case Type::Kind::Atom:
      case Type::Kind::FinSet:
        if (n == 1)
          for (const auto& name : t.names()) out.push_back(Value::sym(name));
        break;
      case Type::Kind::Bot:
        if (n == 1) out.push_back(Value::bot());
        break;
      case Type::Kind::Sum:
        for (const auto& x : values(t.left(), n)) out.push_back(Value::inl(x));
        for (const auto& x : values(t.right(), n)) out.push_back(Value::inr(x));
        break;
      case Type::Kind::Prod:
        for (std::size_t i = 1; i < n; ++i) {
          const auto& ls = values(t.left(), i);
          if (ls.empty()) continue;
          const auto& rs = values(t.right(), n - i);
          for (const auto& l : ls)
            for (const auto& r : rs) out.push_back(Value::pair(l, r));
        }
        break;
      case Type::Kind::List:
        if (n >= 1)
          for (const auto& seq : sequences(t.elem(), n - 1)) out.push_back(Value::list(seq));
        break;
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  // Item sequences of total size m.
  const std::vector<std::vector<Value>>& sequences(const Type& e, std::size_t m) {
    auto key = std::make_pair(render_type(e), m);
    if (auto it = seq_memo_.find(key); it != seq_memo_.end()) return it->second;
    std::vector<std::vector<Value>> out;
    if (m == 0) {
      out.emplace_back();
    } else {
      for (std::size_t i = 1; i <= m; ++i) {
        const auto& firsts = values(e, i);
        if (firsts.empty()) continue;
        const auto& rests = sequences(e, m - i);
        for (const auto& f : firsts)
          for (const auto& r : rests) {
            std::vector<Value> s;
            s.reserve(r.size() + 1);
            s.push_back(f);
            s.insert(s.end(), r.begin(), r.end());
            out.push_back(std::move(s));
          }
      }
    }
    return seq_memo_.emplace(key, std::move(out)).first->second;
  }

  std::map<std::pair<std::string, std::size_t>, std::vector<Value>> memo_;
  std::map<std::pair<std::string, std::size_t>, std::vector<std::vector<Value>>> seq_memo_;
};

}  // namespace

std::vector<Value> enumerate_values(const Type& t, std::size_t size) {
  Enumerator e;
  return e.values(t, size);
}

std::vector<Value> enumerate_values_upto(const Type& t, std::size_t max_size) {
  Enumerator e;
  std::vector<Value> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    const auto& vs = e.values(t, n);
    out.insert(out.end(), vs.begin(), vs.end());
  }
  return out;
}

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

Value random_value(const Type& t, std::size_t budget, std::mt19937_64& rng) {
  std::size_t b = std::max(budget, min_value_size(t));
  switch (t.kind()) {
    case Type::Kind::Atom:
    case Type::Kind::FinSet:
      return Value::sym(t.names()[uniform(rng, 0, t.names().size() - 1)]);
    case Type::Kind::Bot:
      return Value::bot();
    case Type::Kind::Sum: {
      bool left_ok = min_value_size(t.left()) <= b;
      bool right_ok = min_value_size(t.right()) <= b;
      bool go_left = left_ok && (!right_ok || uniform(rng, 0, 1) == 0);
      return go_left ? Value::inl(random_value(t.left(), b, rng))
                     : Value::inr(random_value(t.right(), b, rng));
    }
    case Type::Kind::Prod: {
      std::size_t ml = min_value_size(t.left());
      std::size_t mr = min_value_size(t.right());
      std::size_t lb = uniform(rng, ml, std::max(ml, b - std::min(b, mr)));
      Value l = random_value(t.left(), lb, rng);
      std::size_t used = value_size(l);
      Value r = random_value(t.right(), b > used ? b - used : mr, rng);
      return Value::pair(std::move(l), std::move(r));
    }
    case Type::Kind::List: {
      std::size_t me = min_value_size(t.elem());
      std::size_t remaining = uniform(rng, 1, b) - 1;
      std::vector<Value> items;
      while (remaining >= me) {
        Value x = random_value(t.elem(), uniform(rng, me, remaining), rng);
        std::size_t s = value_size(x);
        if (s > remaining) break;
        remaining -= s;
        items.push_back(std::move(x));
      }
      return Value::list(std::move(items));
    }
  }
  return Value::bot();
}

bool is_finite_type(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::List:
      return false;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      return is_finite_type(t.left()) && is_finite_type(t.right());
    default:
      return true;
  }
}

std::vector<Value> finite_values(const Type& t) {
  std::vector<Value> out;
  switch (t.kind()) {
    case Type::Kind::Atom:
    case Type::Kind::FinSet:
      for (const auto& n : t.names()) out.push_back(Value::sym(n));
      break;
    case Type::Kind::Bot:
      out.push_back(Value::bot());
      break;
    case Type::Kind::Sum:
      for (const auto& x : finite_values(t.left())) out.push_back(Value::inl(x));
      for (const auto& x : finite_values(t.right())) out.push_back(Value::inr(x));
      break;
    case Type::Kind::Prod: {
      auto rs = finite_values(t.right());
      for (const auto& l : finite_values(t.left()))
        for (const auto& r : rs) out.push_back(Value::pair(l, r));
      break;
    }
    case Type::Kind::List:
      throw TypeError("type " + render_type(t) + " is not finite");
  }
  return out;
}

Value default_value(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Atom:
    case Type::Kind::FinSet:
      return Value::sym(t.names()[0]);
    case Type::Kind::Sum:
      if (min_value_size(t.left()) <= min_value_size(t.right())) return Value::inl(default_value(t.left()));
      return Value::inr(default_value(t.right()));
    case Type::Kind::Prod:
      return Value::pair(default_value(t.left()), default_value(t.right()));
    case Type::Kind::List:
      return Value::list({});
    case Type::Kind::Bot:
      break;
  }
  return Value::bot();
}

Value list_of_syms(const std::vector<std::string>& names) {
  std::vector<Value> items;
  items.reserve(names.size());
  for (const auto& n : names) items.push_back(Value::sym(n));
  return Value::list(std::move(items));
}

// ---------------------------------------------------------------------------
// Text syntax.

namespace {

void render_into(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Value::Kind::Sym:
      out += v.name();
      break;
    case Value::Kind::Bot:
      out += "bot";
      break;
    case Value::Kind::InL:
    case Value::Kind::InR:
      out += v.kind() == Value::Kind::InL ? "inl " : "inr ";
      render_into(v.inner(), out);
      break;
    case Value::Kind::Pair: {
      out += '(';
      const Value* cur = &v;
      while (cur->kind() == Value::Kind::Pair) {
        render_into(cur->fst(), out);
        out += ',';
        cur = &cur->snd();
      }
      render_into(*cur, out);
      out += ')';
      break;
    }
    case Value::Kind::List:
      out += '[';
      for (std::size_t i = 0; i < v.items().size(); ++i) {
        if (i) out += ',';
        render_into(v.items()[i], out);
      }
      out += ']';
      break;
  }
}

struct Syn {
  enum class Kind { Ident, Tuple, Inl, Inr, List, Bot } kind;
  std::string name;
  std::vector<Syn> kids;
  std::size_t begin = 0;
  std::size_t end = 0;
};

class ValueParser {
 public:
  explicit ValueParser(std::string_view s) : s_(s) {}

  Value parse_all(const Type& t) {
    Syn syn = parse_item();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("value: unexpected trailing input", pos_);
    return convert(syn, t);
  }

 private:
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'';
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw SyntaxError(std::string("value: expected '") + c + "'", pos_);
    ++pos_;
  }

  std::vector<Syn> parse_seq(char close) {
    std::vector<Syn> items;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == close && close == ']') {
      ++pos_;
      return items;
    }
    for (;;) {
      items.push_back(parse_item());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect(close);
      return items;
    }
  }

  Syn parse_item() {
    skip_ws();
    Syn syn;
    syn.begin = pos_;
    if (pos_ >= s_.size()) throw SyntaxError("value: unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto items = parse_seq(')');
      if (items.size() == 1) {
        Syn inner = std::move(items[0]);
        inner.begin = syn.begin;
        inner.end = pos_;
        return inner;
      }
      syn.kind = Syn::Kind::Tuple;
      syn.kids = std::move(items);
    } else if (c == '[') {
      ++pos_;
      syn.kind = Syn::Kind::List;
      syn.kids = parse_seq(']');
    } else if (ident_char(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      std::string word(s_.substr(start, pos_ - start));
      if (word == "inl" || word == "inr") {
        syn.kind = word == "inl" ? Syn::Kind::Inl : Syn::Kind::Inr;
        syn.kids.push_back(parse_item());
      } else if (word == "bot") {
        syn.kind = Syn::Kind::Bot;
      } else {
        syn.kind = Syn::Kind::Ident;
        syn.name = std::move(word);
      }
    } else {
      throw SyntaxError("value: unexpected character", pos_);
    }
    syn.end = pos_;
    return syn;
  }

  [[noreturn]] void mismatch(const Syn& syn, const Type& t) const {
    throw TypeError("value '" + std::string(s_.substr(syn.begin, syn.end - syn.begin)) +
                    "' does not inhabit type " + render_type(t));
  }

  Value convert(const Syn& syn, const Type& t) const {
    switch (t.kind()) {
      case Type::Kind::Atom:
      case Type::Kind::FinSet:
        if (syn.kind == Syn::Kind::Ident && t.has_name(syn.name)) return Value::sym(syn.name);
        break;
      case Type::Kind::Bot:
        if (syn.kind == Syn::Kind::Bot) return Value::bot();
        break;
      case Type::Kind::Sum:
        if (syn.kind == Syn::Kind::Inl) return Value::inl(convert(syn.kids[0], t.left()));
        if (syn.kind == Syn::Kind::Inr) return Value::inr(convert(syn.kids[0], t.right()));
        break;
      case Type::Kind::Prod:
        if (syn.kind == Syn::Kind::Tuple) {
          Value first = convert(syn.kids[0], t.left());
          if (syn.kids.size() == 2) return Value::pair(first, convert(syn.kids[1], t.right()));
          Syn rest = syn;
          rest.kids.erase(rest.kids.begin());
          rest.begin = rest.kids.front().begin;
          return Value::pair(first, convert(rest, t.right()));
        }
        break;
      case Type::Kind::List:
        if (syn.kind == Syn::Kind::List) {
          std::vector<Value> items;
          for (const auto& k : syn.kids) items.push_back(convert(k, t.elem()));
          return Value::list(std::move(items));
        }
        break;
    }
    mismatch(syn, t);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string render_value(const Value& v) {
  std::string out;
  render_into(v, out);
  return out;
}

Value parse_value(std::string_view text, const Type& t) { return ValueParser(text).parse_all(t); }

// ---------------------------------------------------------------------------
// String encoding.

namespace {

void encode_into(const Value& v, const Type& t, Word& out) {
  if (!check_value(v, t))
    throw TypeError("value " + render_value(v) + " does not inhabit type " + render_type(t));
  switch (t.kind()) {
    case Type::Kind::Atom:
    case Type::Kind::FinSet:
      out.push_back(v.name());
      break;
    case Type::Kind::Bot:
      out.push_back("bot");
      break;
    case Type::Kind::Sum:
      if (v.kind() == Value::Kind::InL) {
        out.push_back("L:");
        encode_into(v.inner(), t.left(), out);
      } else {
        out.push_back("R:");
        encode_into(v.inner(), t.right(), out);
      }
      break;
    case Type::Kind::Prod:
      out.push_back("<p>");
      encode_into(v.fst(), t.left(), out);
      out.push_back("<m>");
      encode_into(v.snd(), t.right(), out);
      out.push_back("</p>");
      break;
    case Type::Kind::List:
      out.push_back("<l>");
      for (const auto& x : v.items()) encode_into(x, t.elem(), out);
      out.push_back("</l>");
      break;
  }
}

class Decoder {
 public:
  explicit Decoder(const Word& w) : w_(w) {}

  Value decode_all(const Type& t) {
    Value v = decode(t);
    if (pos_ != w_.size()) fail("trailing letters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError("encoding: " + msg, pos_);
  }

  const std::string& next() {
    if (pos_ >= w_.size()) fail("unexpected end of word");
    return w_[pos_++];
  }

  void expect(const char* letter) {
    if (next() != letter) {
      --pos_;
      fail(std::string("expected ") + letter);
    }
  }

  Value decode(const Type& t) {
    switch (t.kind()) {
      case Type::Kind::Atom:
      case Type::Kind::FinSet: {
        const std::string& a = next();
        if (!t.has_name(a)) {
          --pos_;
          fail("letter '" + a + "' is not in " + render_type(t));
        }
        return Value::sym(a);
      }
      case Type::Kind::Bot:
        expect("bot");
        return Value::bot();
      case Type::Kind::Sum: {
        const std::string& tag = next();
        if (tag == "L:") return Value::inl(decode(t.left()));
        if (tag == "R:") return Value::inr(decode(t.right()));
        --pos_;
        fail("expected L: or R:");
      }
      case Type::Kind::Prod: {
        expect("<p>");
        Value a = decode(t.left());
        expect("<m>");
        Value b = decode(t.right());
        expect("</p>");
        return Value::pair(std::move(a), std::move(b));
      }
      case Type::Kind::List: {
        expect("<l>");
        std::vector<Value> items;
        for (;;) {
          if (pos_ >= w_.size()) fail("unterminated list");
          if (w_[pos_] == "</l>") {
            ++pos_;
            return Value::list(std::move(items));
          }
          items.push_back(decode(t.elem()));
        }
      }
    }
    fail("unknown type");
  }

  const Word& w_;
  std::size_t pos_ = 0;
};

void alphabet_into(const Type& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Type::Kind::Atom:
    case Type::Kind::FinSet:
      out.insert(t.names().begin(), t.names().end());
      break;
    case Type::Kind::Bot:
      out.insert("bot");
      break;
    case Type::Kind::Sum:
      out.insert({"L:", "R:"});
      alphabet_into(t.left(), out);
      alphabet_into(t.right(), out);
      break;
    case Type::Kind::Prod:
      out.insert({"<p>", "<m>", "</p>"});
      alphabet_into(t.left(), out);
      alphabet_into(t.right(), out);
      break;
    case Type::Kind::List:
      out.insert({"<l>", "</l>"});
      alphabet_into(t.elem(), out);
      break;
  }
}

}  // namespace

Word string_encode(const Value& v, const Type& t) {
  Word out;
  encode_into(v, t, out);
  return out;
}

Value string_decode(const Word& w, const Type& t) { return Decoder(w).decode_all(t); }

std::vector<std::string> encoding_alphabet(const Type& t) {
  std::set<std::string> s;
  alphabet_into(t, s);
  return {s.begin(), s.end()};
}

std::string join_word(const Word& w, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += w[i];
  }
  return out;
}

Word split_encoded(std::string_view text, const Type& t) {
  auto alphabet = encoding_alphabet(t);
  std::sort(alphabet.begin(), alphabet.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  Word out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    auto it = std::find_if(alphabet.begin(), alphabet.end(),
                           [&](const std::string& a) { return text.substr(pos, a.size()) == a; });
    if (it == alphabet.end()) throw SyntaxError("encoding: unknown letter", pos);
    out.push_back(*it);
    pos += it->size();
  }
  return out;
}

}  // namespace listfn
