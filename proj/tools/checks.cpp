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

#include "checks.hpp"

#include <atomic>
#include <filesystem>
#include <functional>
#include <random>
#include <thread>

#include "listfn/algebra.hpp"
#include "listfn/error.hpp"
#include "listfn/formats.hpp"
#include "listfn/logic.hpp"
#include "listfn/random.hpp"
#include "listfn/rational.hpp"
#include "listfn/registers.hpp"
#include "listfn/sst.hpp"
#include "listfn/stdlib.hpp"
#include "listfn/term_syntax.hpp"

namespace listfn::cli {

namespace {

using CaseFn = std::function<CaseRecord(std::size_t, std::mt19937_64&)>;

std::vector<CaseRecord> run_cases(const CheckRequest& req, const std::string& kind, const CaseFn& fn) {
  std::vector<CaseRecord> out(req.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < req.count;) {
      std::mt19937_64 rng(gen::case_seed(req.seed, i));
      try {
        out[i] = fn(i, rng);
      } catch (const std::exception& e) {
        out[i] = {kind, "case " + std::to_string(i), "", false, e.what()};
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < std::max<std::size_t>(req.jobs, 1); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

CaseRecord compare(std::string kind, std::string input, const std::string& actual, const std::string& expected) {
  CaseRecord r{std::move(kind), std::move(input), actual, actual == expected, ""};
  if (!r.ok) r.detail = "expected " + expected;
  return r;
}

std::string show_word(const Word& w) { return "\"" + render_literal(w) + "\""; }

// --- rational ---------------------------------------------------------------

std::vector<CaseRecord> check_rational(const CheckRequest& req) {
  struct Inst {
    std::string name;
    RationalFn r;
    CompiledRational c;
  };
  std::vector<Inst> insts;
  auto add = [&](std::string name, RationalFn r) {
    CompiledRational c = compile_rational(r);
    insts.push_back({std::move(name), std::move(r), std::move(c)});
  };
  std::vector<std::string> names = req.args.empty() ? std::vector<std::string>{"keep_a", "mark_ab"} : req.args;
  for (const auto& n : names) {
    if (n == "keep_a")
      add(n, rationals::keep_a());
    else if (n == "mark_ab")
      add(n, rationals::mark_ab());
    else
      add(std::filesystem::path(n).stem().string(),
          parse_rational(read_text_file(n), std::filesystem::path(n).parent_path()));
  }
  return run_cases(req, "rational", [&](std::size_t i, std::mt19937_64& rng) {
    const Inst& in = insts[i % insts.size()];
    Word w = gen::random_word(in.r.sigma, gen::ramp(i, req.count, 200), rng);
    return compare("rational:" + in.name, show_word(w), show_word(eval_pipeline_word(in.c.pipeline, w)),
                   show_word(eval_rational_direct(in.r, w)));
  });
}

// --- registers --------------------------------------------------------------

const std::vector<std::string> kGamma = {"a", "b"};

std::string describe(std::size_t k, const std::vector<WordUpdate>& us) {
  std::string s = "k=" + std::to_string(k) + " n=" + std::to_string(us.size());
  if (!us.empty()) s += " first=" + render_word_update(us[0]);
  return s;
}

CaseRecord compare_products(const std::string& kind, std::size_t k, const std::vector<WordUpdate>& us,
                            const WordUpdate& got, std::mt19937_64& rng) {
  FreeMonoid m{kGamma};
  WordUpdate want = normalise(m, fold_updates(m, us, k));
  WordUpdate have = normalise(m, got);
  CaseRecord r = compare(kind, describe(k, us), render_word_update(have), render_word_update(want));
  auto v = gen::random_valuation(k, kGamma, rng);
  if (r.ok && apply_update(m, v, have) != apply_update(m, v, want)) {
    r.ok = false;
    r.detail = "actions differ on a probe valuation";
  }
  return r;
}

std::vector<CaseRecord> check_registers_fold(const CheckRequest& req) {
  return run_cases(req, "registers-fold", [&](std::size_t i, std::mt19937_64& rng) {
    std::size_t k = 1 + i % 4;
    auto us = gen::random_updates(k, gen::ramp(i, req.count, 200), kGamma, rng);
    return compare_products("registers-fold", k, us, product_list_updates(FreeMonoid{kGamma}, us, k), rng);
  });
}

std::vector<CaseRecord> check_registers_homogeneous(const CheckRequest& req) {
  std::vector<std::vector<Abstraction>> all;
  for (std::size_t k = 0; k <= 4; ++k) all.push_back(enumerate_abstractions(k));
  return run_cases(req, "registers-homogeneous", [&](std::size_t i, std::mt19937_64& rng) {
    std::size_t k = 1 + i % 4;
    const Abstraction& tau = all[k][gen::uniform(rng, 0, all[k].size() - 1)];
    std::vector<WordUpdate> us;
    std::size_t n = 1 + gen::ramp(i, req.count, 59);
    for (std::size_t j = 0; j < n; ++j) us.push_back(gen::random_update_like(tau, kGamma, rng));
    return compare_products("registers-homogeneous", k, us, homogeneous_product(FreeMonoid{kGamma}, us, tau), rng);
  });
}

// --- transductions ----------------------------------------------------------

std::vector<Type> default_fot_types(const std::string& name) {
  if (name == "block") return {parse_type("{a,b}"), parse_type("{c,d}")};
  if (name == "flat") return {parse_type("{a,b}")};
  return {parse_type("{a,b,c}")};
}

std::vector<CaseRecord> check_fot_commute(const CheckRequest& req) {
  if (req.args.size() != 1) throw SyntaxError("check fot-commute needs one builtin name", 0);
  const std::string& name = req.args[0];
  std::vector<Type> params;
  for (const auto& t : req.types) params.push_back(parse_type(t));
  if (params.empty()) params = default_fot_types(name);
  FOTransduction fot = builtin_fot(name, params);
  Term term = builtin_term(name, params);
  return run_cases(req, "fot-commute:" + name, [&](std::size_t i, std::mt19937_64& rng) {
    Value v = random_value(term.dom(), gen::ramp(i, req.count, 30), rng);
    CommuteReport rep = check_commutes(term, fot, {v});
    CaseRecord r{"fot-commute:" + name, render_value(v), "", rep.ok(), ""};
    if (rep.ok()) {
      r.output = render_value(eval(term, v));
    } else {
      r.output = rep.failures[0].actual;
      r.detail = "expected " + rep.failures[0].expected;
    }
    return r;
  });
}

// --- stdlib -----------------------------------------------------------------

const std::vector<std::pair<std::string, std::vector<std::string>>>& std_panel() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> p = {
      {"identity", {"{a,b}*"}},
      {"unit", {"{a,b}"}},
      {"finite_function", {"{a,b}", "{x,y}", "a=y", "b=x"}},
      {"head", {"{a,b}"}},
      {"tail", {"{a,b}"}},
      {"last", {"{a,b}"}},
      {"len_upto", {"2", "{a,b}"}},
      {"filter_left", {"{a,b}", "{c,d}"}},
      {"comma", {"{a,b}", "{#}"}},
      {"pair_to_list", {"{a,b}"}},
      {"list_to_pair", {"{a,b}", "a"}},
      {"concat", {"{a,b}"}},
      {"windows", {"2", "{a,b}"}},
      {"windows", {"3", "{a,b}"}},
      {"if_then_else", {"(std:is_empty {a,b})", "reverse@{a,b}", "(std:identity {a,b}*)"}},
      {"lift_plus", {"(std:unit {a,b})"}},
      {"is_empty", {"{a,b}"}},
      {"is_nonempty", {"{a,b}"}},
  };
  return p;
}

std::vector<CaseRecord> check_std(const CheckRequest& req) {
  std::vector<stdlib::Instance> insts;
  stdlib::TermParser parser = [](std::string_view s) { return parse_term(s); };
  const std::string which = req.args.empty() ? "all" : req.args[0];
  if (which == "all") {
    for (const auto& [n, a] : std_panel()) insts.push_back(stdlib::build(n, a, parser));
  } else if (req.args.size() > 1) {
    insts.push_back(stdlib::build(which, {req.args.begin() + 1, req.args.end()}, parser));
  } else {
    for (const auto& [n, a] : std_panel())
      if (n == which) insts.push_back(stdlib::build(n, a, parser));
    if (insts.empty()) throw SyntaxError("no default arguments for std:" + which + "; pass them after the name", 0);
  }
  return run_cases(req, "std", [&](std::size_t i, std::mt19937_64& rng) {
    const auto& in = insts[i % insts.size()];
    Value v = random_value(in.term.dom(), gen::ramp(i, req.count, 40), rng);
    return compare("std:" + in.name, render_value(v), render_value(eval(in.term, v)), render_value(in.reference(v)));
  });
}

// --- sst --------------------------------------------------------------------

SSTSpec builtin_sst(const std::string& name, const std::vector<std::string>& alphabet) {
  if (name == "identity") return ssts::identity_copy(alphabet);
  if (name == "reverse") return ssts::reverse(alphabet);
  if (name == "flip_after") return ssts::flip_after(alphabet, alphabet.back());
  if (name == "delay") return ssts::delay(alphabet, alphabet.front());
  throw SyntaxError("unknown builtin sst '" + name + "'", 0);
}

std::vector<CaseRecord> check_sst(const CheckRequest& req) {
  struct Inst {
    std::string name;
    StructuredSST s;
  };
  std::vector<Inst> insts;
  std::vector<std::string> names = req.args.empty() ? std::vector<std::string>{"identity", "reverse"} : req.args;
  for (const auto& n : names) {
    SSTSpec spec = std::filesystem::exists(n) ? parse_sst(read_text_file(n)) : builtin_sst(n, {"a", "b", "c"});
    insts.push_back({n, structure_sst(spec)});
  }
  return run_cases(req, "sst", [&](std::size_t i, std::mt19937_64& rng) {
    const auto& in = insts[i % insts.size()];
    Word w = gen::random_word(in.s.sst.input, gen::ramp(i, req.count, 100), rng);
    return compare("sst:" + in.name, show_word(w), show_word(run_sst_structured(in.s, w)),
                   show_word(run_sst_naive(in.s.sst, w)));
  });
}

// --- forest -----------------------------------------------------------------

std::vector<CaseRecord> check_forest(const CheckRequest& req) {
  struct Inst {
    std::string name;
    Homomorphism h;
    std::uint64_t bound;
  };
  std::vector<Inst> insts;
  std::vector<std::string> refs =
      req.args.empty() ? std::vector<std::string>{"builtin:U1", "builtin:contains_ab"} : req.args;
  for (const auto& ref : refs) {
    FiniteMonoid m = resolve_monoid(ref);
    std::vector<int> image;
    for (int e = 0; e < m.size(); ++e) image.push_back(e);
    Homomorphism h(m.elements(), image, m);
    insts.push_back({ref, h, forest_depth_bound(m)});
  }
  return run_cases(req, "forest", [&](std::size_t i, std::mt19937_64& rng) {
    const auto& in = insts[i % insts.size()];
    Word w = gen::random_word(in.h.alphabet, 1 + gen::ramp(i, req.count, 299), rng);
    auto letters = in.h.letters(w);
    FactTree t = build_factorisation(in.h, letters);
    CaseRecord r{"forest:" + in.name, join_word(w, " "), "depth " + std::to_string(tree_depth(t)), true, ""};
    Validation val = validate_factorisation(in.h, t);
    if (!val.ok)
      r.detail = val.violation;
    else if (tree_yield(t) != letters)
      r.detail = "yield differs from the input";
    else if (tree_depth(t) > in.bound)
      r.detail = "depth exceeds bound " + std::to_string(in.bound);
    else if (eval_hom_via_forest(in.h, letters) != in.h.apply(letters))
      r.detail = "product mismatch";
    r.ok = r.detail.empty();
    return r;
  });
}

}  // namespace

std::vector<std::string> check_suites() {
  return {"rational", "registers-fold", "registers-homogeneous", "fot-commute", "std", "sst", "forest"};
}

std::vector<CaseRecord> run_check(const CheckRequest& req) {
  if (req.suite == "rational") return check_rational(req);
  if (req.suite == "registers-fold") return check_registers_fold(req);
  if (req.suite == "registers-homogeneous") return check_registers_homogeneous(req);
  if (req.suite == "fot-commute") return check_fot_commute(req);
  if (req.suite == "std") return check_std(req);
  if (req.suite == "sst") return check_sst(req);
  if (req.suite == "forest") return check_forest(req);
  throw SyntaxError("unknown check '" + req.suite + "'", 0);
}

}  // namespace listfn::cli
