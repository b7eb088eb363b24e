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

#include "listfn/rational.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "listfn/error.hpp"
#include "listfn/stdlib.hpp"
#include "listfn/term_syntax.hpp"

namespace listfn {

RationalFn::RationalFn(std::vector<std::string> sigma_, std::vector<std::string> gamma_, FiniteMonoid monoid_,
                       std::vector<int> h_, std::vector<Word> out_)
    : sigma(std::move(sigma_)), gamma(std::move(gamma_)), monoid(std::move(monoid_)), h(std::move(h_)),
      out(std::move(out_)) {
  (void)Type::finset(sigma);
  (void)Type::finset(gamma);
  if (h.size() != sigma.size()) throw TypeError("rational function: letter map must cover the input alphabet");
  for (int m : h)
    if (m < 0 || m >= monoid.size()) throw TypeError("rational function: letter image out of range");
  std::size_t expected = static_cast<std::size_t>(monoid.size()) * sigma.size() * static_cast<std::size_t>(monoid.size());
  if (out.size() != expected) throw TypeError("rational function: output table is not total");
  Type g = Type::finset(gamma);
  for (const auto& w : out)
    for (const auto& c : w)
      if (!g.has_name(c)) throw TypeError("rational function: output letter '" + c + "' is not in the output alphabet");
}

Word eval_rational_direct(const RationalFn& r, const Word& w) {
  const FiniteMonoid& m = r.monoid;
  std::vector<int> letters;
  for (const auto& a : w) {
    auto it = std::find(r.sigma.begin(), r.sigma.end(), a);
    if (it == r.sigma.end()) throw EvalError("letter '" + a + "' is not in the input alphabet");
    letters.push_back(static_cast<int>(it - r.sigma.begin()));
  }
  const std::size_t n = letters.size();
  // pre[i] = h(a_1..a_i), suf[i] = h(a_{i+1}..a_n)
  std::vector<int> pre(n + 1, m.identity()), suf(n + 1, m.identity());
  for (std::size_t i = 0; i < n; ++i) pre[i + 1] = m.mult(pre[i], r.h[static_cast<std::size_t>(letters[i])]);
  for (std::size_t i = n; i-- > 0;) suf[i] = m.mult(r.h[static_cast<std::size_t>(letters[i])], suf[i + 1]);
  Word out;
  for (std::size_t i = 0; i < n; ++i) {
    const Word& piece = r.output(pre[i], letters[i], suf[i + 1]);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

std::vector<std::pair<int, int>> power_profile_list(const FiniteMonoid& m, std::size_t n, int s) {
  const std::size_t n0 = static_cast<std::size_t>(m.aperiodicity_index().value_or(0));
  if (n0 == 0) throw NotAperiodic("monoid is not aperiodic");
  std::vector<int> pw(n0 + 1, m.identity());  // pw[e] = s^e for e <= n0
  for (std::size_t e = 1; e <= n0; ++e) pw[e] = m.mult(pw[e - 1], s);
  auto power = [&](std::size_t e) { return pw[std::min(e, n0)]; };
  std::vector<std::pair<int, int>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(power(i), power(n - 1 - i));
  return out;
}

namespace {

void profile_children(const FiniteMonoid& m, const FactTree& src, ProfiledTree& dst) {
  const auto& cs = src.children;
  if (cs.size() == 1 && cs[0].is_leaf()) {
    dst.children.push_back(ProfiledTree::leaf(cs[0].letter));
    return;
  }
  std::vector<std::pair<int, int>> profiles;
  bool equal = std::all_of(cs.begin(), cs.end(), [&](const FactTree& c) { return c.label == cs[0].label; });
  if (cs.size() >= 3 && equal) {
    profiles = power_profile_list(m, cs.size(), cs[0].label);
  } else {
    // Exact sibling products.
    for (std::size_t i = 0; i < cs.size(); ++i) {
      int l = m.identity(), r = m.identity();
      for (std::size_t j = 0; j < i; ++j) l = m.mult(l, cs[j].label);
      for (std::size_t j = i + 1; j < cs.size(); ++j) r = m.mult(r, cs[j].label);
      profiles.emplace_back(l, r);
    }
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    ProfiledTree c = ProfiledTree::node(profiles[i], {});
    profile_children(m, cs[i], c);
    dst.children.push_back(std::move(c));
  }
}

}  // namespace

ProfiledTree sibling_profiles(const FiniteMonoid& m, const FactTree& t) {
  if (t.is_leaf()) return ProfiledTree::leaf(t.letter);
  ProfiledTree root = ProfiledTree::node({m.identity(), m.identity()}, {});
  profile_children(m, t, root);
  return root;
}

std::optional<std::tuple<int, int, int>> profile_triple(const FiniteMonoid& m,
                                                        const std::vector<std::pair<int, int>>& ancestors,
                                                        int letter, std::size_t k) {
  if (ancestors.size() > k) return std::nullopt;
  int left = m.identity(), right = m.identity();
  for (const auto& [s, t] : ancestors) {
    left = m.mult(left, s);
    right = m.mult(t, right);
  }
  return std::make_tuple(left, letter, right);
}

Type trees_type(std::size_t k, const Type& label, const Type& sigma) {
  // Cached so that equal parameters yield the same shared type object; these
  // types are DAGs whose tree expansion is exponential in k.
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, std::string, std::string>, Type> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::string lkey = render_type(label), skey = render_type(sigma);
  Type t = canonical(sigma);
  for (std::size_t j = 1; j <= k; ++j) {
    auto key = std::make_tuple(j, lkey, skey);
    if (auto it = cache.find(key); it != cache.end()) {
      t = it->second;
      continue;
    }
    t = Type::sum(t, Type::prod(canonical(label), Type::prod(t, Type::list(t))));
    cache.emplace(key, t);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Tree values.

namespace {

template <class L>
Value encode_tree(const Tree<L>& t, std::size_t level, const std::function<Value(const L&)>& label,
                  const std::vector<std::string>& sigma) {
  std::size_t d = tree_depth(t);
  if (d > level) throw EvalError("tree of depth " + std::to_string(d) + " exceeds the bound " + std::to_string(level));
  if (d < level) return Value::inl(encode_tree(t, level - 1, label, sigma));
  if (t.is_leaf()) return Value::sym(sigma.at(static_cast<std::size_t>(t.letter)));
  std::vector<Value> rest;
  for (std::size_t i = 1; i < t.children.size(); ++i) rest.push_back(encode_tree(t.children[i], level - 1, label, sigma));
  Value kids = Value::pair(encode_tree(t.children[0], level - 1, label, sigma), Value::list(std::move(rest)));
  return Value::inr(Value::pair(label(t.label), std::move(kids)));
}

int name_index(const std::vector<std::string>& names, const std::string& n) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return static_cast<int>(i);
  throw EvalError("unknown name '" + n + "'");
}

template <class L>
Tree<L> decode_tree(const Value& v, std::size_t level, const std::function<L(const Value&)>& label,
                    const std::vector<std::string>& sigma) {
  if (level == 0) {
    if (v.kind() != Value::Kind::Sym) throw EvalError("malformed tree value");
    return Tree<L>::leaf(name_index(sigma, v.name()));
  }
  if (v.kind() == Value::Kind::InL) return decode_tree(v.inner(), level - 1, label, sigma);
  if (v.kind() != Value::Kind::InR) throw EvalError("malformed tree value");
  const Value& p = v.inner();
  std::vector<Tree<L>> kids;
  kids.push_back(decode_tree(p.snd().fst(), level - 1, label, sigma));
  for (const auto& c : p.snd().snd().items()) kids.push_back(decode_tree(c, level - 1, label, sigma));
  return Tree<L>::node(label(p.fst()), std::move(kids));
}

nlohmann::json monoid_json(const FiniteMonoid& m) {
  return {{"elements", m.elements()}, {"table", m.table()}, {"identity", m.identity()}};
}

FiniteMonoid monoid_from_json(const nlohmann::json& j) {
  return FiniteMonoid(j.at("elements").get<std::vector<std::string>>(), j.at("table").get<std::vector<int>>(),
                      j.at("identity").get<int>());
}

struct StageContext {
  FiniteMonoid monoid;
  std::vector<std::string> sigma;
  std::vector<int> h;
  std::size_t k;
  Type m;      // FinSet of monoid elements
  Type mm;     // m x m
  Type s;      // FinSet sigma
};

StageContext context_from(const nlohmann::json& p) {
  FiniteMonoid mon = monoid_from_json(p.at("monoid"));
  Type m = Type::finset(mon.elements());
  auto sigma = p.at("sigma").get<std::vector<std::string>>();
  std::vector<int> h = p.contains("h") ? p.at("h").get<std::vector<int>>() : std::vector<int>{};
  return {mon, sigma, h, p.at("k").get<std::size_t>(), m, Type::prod(m, m), Type::finset(sigma)};
}

OpaqueStage make_opaque(const std::string& name, const nlohmann::json& params) {
  auto ctx = std::make_shared<StageContext>(context_from(params));
  const Type& m = ctx->m;
  auto mlabel = [ctx](const int& x) { return Value::sym(ctx->monoid.name(x)); };
  auto mparse = [ctx](const Value& v) { return ctx->monoid.index_of(v.name()); };
  auto pplabel = [ctx](const std::pair<int, int>& x) {
    return Value::pair(Value::sym(ctx->monoid.name(x.first)), Value::sym(ctx->monoid.name(x.second)));
  };
  auto ppparse = [ctx](const Value& v) {
    return std::make_pair(ctx->monoid.index_of(v.fst().name()), ctx->monoid.index_of(v.snd().name()));
  };
  Type tree_m = trees_type(ctx->k, m, ctx->s);
  Type tree_mm = trees_type(ctx->k, ctx->mm, ctx->s);
  Type anc = Type::list(Type::prod(Type::list(ctx->mm), ctx->s));
  Type triples = Type::list(Type::sum(Type::prod(m, Type::prod(ctx->s, m)), Type::bot()));
  if (name == "forest") {
    Homomorphism h(ctx->sigma, ctx->h, ctx->monoid);
    return {name, Type::list(ctx->s), tree_m, params, [ctx, h, mlabel](const Value& v) {
              std::vector<int> word;
              for (const auto& x : v.items()) word.push_back(h.letter_index(x.name()));
              FactTree t = build_factorisation(h, std::span<const int>(word));
              return encode_tree<int>(t, ctx->k, mlabel, ctx->sigma);
            }};
  }
  if (name == "profiles") {
    return {name, tree_m, tree_mm, params, [ctx, mparse, pplabel](const Value& v) {
              FactTree t = decode_tree<int>(v, ctx->k, mparse, ctx->sigma);
              ProfiledTree p = sibling_profiles(ctx->monoid, t);
              return encode_tree<std::pair<int, int>>(p, ctx->k, pplabel, ctx->sigma);
            }};
  }
  if (name == "ancestors") {
    return {name, tree_mm, anc, params, [ctx, ppparse, pplabel](const Value& v) {
              ProfiledTree t = decode_tree<std::pair<int, int>>(v, ctx->k, ppparse, ctx->sigma);
              std::vector<Value> out;
              for (const auto& [path, leaf] : ancestor_lists(t)) {
                std::vector<Value> labels;
                for (const auto& l : path) labels.push_back(pplabel(l));
                out.push_back(Value::pair(Value::list(std::move(labels)), Value::sym(ctx->sigma.at(leaf))));
              }
              return Value::list(std::move(out));
            }};
  }
  if (name == "triples") {
    return {name, anc, triples, params, [ctx, ppparse](const Value& v) {
              std::vector<Value> out;
              for (const auto& item : v.items()) {
                std::vector<std::pair<int, int>> path;
                for (const auto& l : item.fst().items()) path.push_back(ppparse(l));
                auto t = profile_triple(ctx->monoid, path, name_index(ctx->sigma, item.snd().name()), ctx->k);
                if (!t) {
                  out.push_back(Value::inr(Value::bot()));
                  continue;
                }
                auto [l, a, r] = *t;
                out.push_back(Value::inl(Value::pair(Value::sym(ctx->monoid.name(l)),
                                                     Value::pair(item.snd(), Value::sym(ctx->monoid.name(r))))));
              }
              return Value::list(std::move(out));
            }};
  }
  throw SyntaxError("unknown pipeline stage '" + name + "'", 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Pipelines.

Type stage_dom(const Stage& s) {
  if (auto t = std::get_if<Term>(&s)) return t->dom();
  if (auto o = std::get_if<OpaqueStage>(&s)) return o->dom;
  return std::get<BranchStage>(s).pred.dom();
}

Type stage_cod(const Stage& s) {
  if (auto t = std::get_if<Term>(&s)) return t->cod();
  if (auto o = std::get_if<OpaqueStage>(&s)) return o->cod;
  const auto& b = std::get<BranchStage>(s);
  return b.then_p->empty() ? b.pred.dom() : b.then_p->cod();
}

Pipeline::Pipeline(std::vector<Stage> stages) : stages_(std::move(stages)) {
  for (const auto& s : stages_) {
    if (const auto* b = std::get_if<BranchStage>(&s)) {
      if (b->pred.cod() != bool_type()) throw TypeError("pipeline branch predicate must return {0,1}");
      Type d = b->pred.dom();
      Type tc = b->then_p->empty() ? d : b->then_p->cod();
      Type ec = b->else_p->empty() ? d : b->else_p->cod();
      if ((!b->then_p->empty() && b->then_p->dom() != d) || (!b->else_p->empty() && b->else_p->dom() != d))
        throw TypeError("pipeline branch domains differ from the predicate domain");
      if (tc != ec) throw TypeError("pipeline branches have different codomains");
    }
  }
  for (std::size_t i = 1; i < stages_.size(); ++i)
    if (stage_cod(stages_[i - 1]) != stage_dom(stages_[i]))
      throw TypeError("pipeline stage " + std::to_string(i) + " does not accept the output of stage " +
                      std::to_string(i - 1));
}

Type Pipeline::dom() const {
  if (stages_.empty()) throw Error("empty pipeline has no fixed domain");
  return stage_dom(stages_.front());
}

Type Pipeline::cod() const {
  if (stages_.empty()) throw Error("empty pipeline has no fixed codomain");
  return stage_cod(stages_.back());
}

Value eval_pipeline(const Pipeline& p, const Value& v) {
  Value cur = v;
  for (const auto& s : p.stages()) {
    if (const auto* t = std::get_if<Term>(&s)) {
      cur = eval(*t, cur);
    } else if (const auto* o = std::get_if<OpaqueStage>(&s)) {
      cur = o->fn(cur);
    } else {
      const auto& b = std::get<BranchStage>(s);
      Value c = eval(b.pred, cur);
      cur = eval_pipeline(c.name() == "1" ? *b.then_p : *b.else_p, cur);
    }
  }
  return cur;
}

Word eval_pipeline_word(const Pipeline& p, const Word& w) {
  Value out = eval_pipeline(p, list_of_syms(w));
  Word res;
  for (const auto& x : out.items()) res.push_back(x.name());
  return res;
}

CompiledRational compile_rational(const RationalFn& r) {
  if (!r.aperiodic()) throw NotAperiodic("rational function monoid is not aperiodic");
  std::uint64_t bound = forest_depth_bound(r.monoid);
  constexpr std::uint64_t kMaxDepth = 256;
  if (bound > kMaxDepth)
    throw Error("forest depth bound " + std::to_string(bound) + " is too large to compile");
  const std::size_t k = static_cast<std::size_t>(bound);
  nlohmann::json params = {{"monoid", monoid_json(r.monoid)}, {"sigma", r.sigma}, {"k", k}};
  nlohmann::json forest_params = params;
  forest_params["h"] = r.h;

  Type s = Type::finset(r.sigma);
  Type m = Type::finset(r.monoid.elements());
  Type g = Type::finset(r.gamma);
  Type lg = Type::list(g);
  Type triple = Type::sum(Type::prod(m, Type::prod(s, m)), Type::bot());
  std::map<Value, Value> table;
  table[Value::inr(Value::bot())] = Value::list({});
  for (int a = 0; a < static_cast<int>(r.sigma.size()); ++a)
    for (int x = 0; x < r.monoid.size(); ++x)
      for (int y = 0; y < r.monoid.size(); ++y) {
        Value key = Value::inl(Value::pair(Value::sym(r.monoid.name(x)),
                                           Value::pair(Value::sym(r.sigma[static_cast<std::size_t>(a)]),
                                                       Value::sym(r.monoid.name(y)))));
        table[key] = list_of_syms(r.output(x, a, y));
      }
  Term apply_out = Term::compose(Term::flat(g), Term::map(stdlib::finite_function(triple, lg, table)));

  auto nonempty = std::make_shared<const Pipeline>(std::vector<Stage>{
      make_opaque("forest", forest_params), make_opaque("profiles", params), make_opaque("ancestors", params),
      make_opaque("triples", params), apply_out});
  auto empty = std::make_shared<const Pipeline>(
      std::vector<Stage>{Term::constant(Value::list({}), Type::list(s), lg)});
  BranchStage branch{stdlib::is_empty(s), empty, nonempty};
  return {Pipeline({branch}), k};
}

// ---------------------------------------------------------------------------
// Serialisation.

namespace {

nlohmann::json stage_json(const Stage& s);

nlohmann::json pipeline_json(const Pipeline& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : p.stages()) arr.push_back(stage_json(s));
  return arr;
}

nlohmann::json stage_json(const Stage& s) {
  if (const auto* t = std::get_if<Term>(&s)) return {{"kind", "term"}, {"term", render_term(*t)}};
  if (const auto* o = std::get_if<OpaqueStage>(&s)) return {{"kind", "opaque"}, {"name", o->name}, {"params", o->params}};
  const auto& b = std::get<BranchStage>(s);
  return {{"kind", "branch"},
          {"pred", render_term(b.pred)},
          {"then", pipeline_json(*b.then_p)},
          {"else", pipeline_json(*b.else_p)}};
}

Stage stage_from_json(const nlohmann::json& j);

Pipeline pipeline_from_json(const nlohmann::json& arr) {
  std::vector<Stage> stages;
  for (const auto& s : arr) stages.push_back(stage_from_json(s));
  return Pipeline(std::move(stages));
}

Stage stage_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "term") return parse_term(j.at("term").get<std::string>());
  if (kind == "opaque") return make_opaque(j.at("name").get<std::string>(), j.at("params"));
  if (kind == "branch")
    return BranchStage{parse_term(j.at("pred").get<std::string>()),
                       std::make_shared<const Pipeline>(pipeline_from_json(j.at("then"))),
                       std::make_shared<const Pipeline>(pipeline_from_json(j.at("else")))};
  throw SyntaxError("unknown stage kind '" + kind + "'", 0);
}

constexpr const char* kPipelineHeader = "listfn-pipeline 1";

}  // namespace

std::string save_pipeline(const Pipeline& p) {
  std::string out = std::string(kPipelineHeader) + "\n";
  for (const auto& s : p.stages()) out += stage_json(s).dump() + "\n";
  return out;
}

Pipeline load_pipeline(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kPipelineHeader) throw SyntaxError("missing pipeline header", 0);
  std::vector<Stage> stages;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      stages.push_back(stage_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw SyntaxError(std::string("pipeline line ") + std::to_string(lineno) + ": " + e.what(), 0);
    }
  }
  return Pipeline(std::move(stages));
}

namespace rationals {

RationalFn keep_a() {
  FiniteMonoid m = monoids::u1();
  const int one = m.index_of("1"), zero = m.index_of("0");
  std::vector<Word> out;
  for (int l = 0; l < m.size(); ++l)
    for (int a = 0; a < 2; ++a)
      for (int r = 0; r < m.size(); ++r) out.push_back(a == 1 ? Word{"b"} : l == one ? Word{"a"} : Word{});
  return RationalFn({"a", "b"}, {"a", "b"}, m, {one, zero}, out);
}

RationalFn mark_ab() {
  FiniteMonoid m = monoids::contains_ab();
  const int z = m.index_of("z");
  const std::vector<std::string> sigma = {"a", "b"};
  std::vector<Word> out;
  for (int l = 0; l < m.size(); ++l)
    for (int a = 0; a < 2; ++a)
      for (int r = 0; r < m.size(); ++r) {
        Word w;
        if (l != z) w.push_back(sigma[static_cast<std::size_t>(a)]);
        if (r == z) w.push_back("x");
        out.push_back(w);
      }
  return RationalFn(sigma, {"a", "b", "x"}, m, {m.index_of("a"), m.index_of("b")}, out);
}

}  // namespace rationals

}  // namespace listfn
