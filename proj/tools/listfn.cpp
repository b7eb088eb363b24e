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

// listfn: command line front end.
//
// Exit codes: 0 pass, 2 syntax, 3 type or runtime error, 4 equivalence failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "checks.hpp"
#include "json.hpp"
#include "listfn/algebra.hpp"
#include "listfn/error.hpp"
#include "listfn/formats.hpp"
#include "listfn/logic.hpp"
#include "listfn/rational.hpp"
#include "listfn/registers.hpp"
#include "listfn/sst.hpp"
#include "listfn/term.hpp"
#include "listfn/term_syntax.hpp"
#include "listfn/types.hpp"
#include "listfn/value.hpp"

namespace fs = std::filesystem;
using namespace listfn;

namespace {

enum Exit { kPass = 0, kSyntax = 2, kRuntime = 3, kMismatch = 4 };

class Mismatch : public Error {
 public:
  using Error::Error;
};

struct Output {
  bool json = false;
  std::string command;

  void record(const std::string& kind, const std::string& input, const std::string& output,
              const std::string& status) const {
    nlohmann::json j = {{"kind", kind}, {"input", input}, {"output", output}, {"status", status}};
    std::cout << j.dump() << "\n";
  }
  // One result: the plain text in text mode, a record otherwise.
  void result(const std::string& input, const std::string& output) const {
    if (json)
      record(command, input, output, "pass");
    else
      std::cout << output << "\n";
  }
};

std::string slurp(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_text_file(arg);
}

// A term file, or the term text itself.
Term load_term(const std::string& arg) {
  if (fs::is_regular_file(arg)) {
    std::string text = read_text_file(arg);
    if (file_kind(text) == "term") return parse_term_file(text, fs::path(arg).parent_path());
    return parse_term(text);
  }
  return parse_term(arg);
}

Term checked(const Term& t) {
  if (!t.well_typed()) throw TypeError(t.type_error());
  return t;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');)
    if (!part.empty()) out.push_back(part);
  return out;
}

SSTSpec load_sst(const std::string& arg, const std::string& alphabet) {
  if (arg.rfind("builtin:", 0) != 0) return parse_sst(read_text_file(arg));
  std::string name = arg.substr(8);
  auto alpha = split_csv(alphabet);
  if (alpha.empty()) throw SyntaxError("empty alphabet", 0);
  if (name == "identity") return ssts::identity_copy(alpha);
  if (name == "reverse") return ssts::reverse(alpha);
  if (name == "flip_after") return ssts::flip_after(alpha, alpha.back());
  if (name == "delay") return ssts::delay(alpha, alpha.front());
  throw SyntaxError("unknown builtin sst '" + name + "'", 0);
}

std::string show_word(const Word& w) { return render_literal(w); }

void write_or_print(const Output& out, const std::string& path, const std::string& input, const std::string& text) {
  if (path.empty()) {
    if (out.json)
      out.record(out.command, input, text, "pass");
    else
      std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
  out.result(input, "wrote " + path);
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("LISTFN_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw SyntaxError("LISTFN_SEED is not a number", 0);
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typed nested-list functions: evaluation, compilation, transductions and checks."};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  std::string format = "text";
  app.add_option("--format", format, "text or json-lines")->check(CLI::IsMember({"text", "json-lines"}));

  std::function<int()> action;

  // typecheck / eval
  std::string term_arg, value_arg;
  auto* typecheck = app.add_subcommand("typecheck", "Print the typing of a term");
  typecheck->add_option("term", term_arg, "term file or term text")->required();
  typecheck->callback([&] {
    action = [&] {
      Term t = checked(load_term(term_arg));
      std::string typing = render_type(t.dom()) + " -> " + render_type(t.cod());
      out.result(render_term(t), typing + (t.first_order() ? "" : " (regular)"));
      return kPass;
    };
  });
  auto* evalc = app.add_subcommand("eval", "Evaluate a term on a value");
  evalc->add_option("term", term_arg, "term file or term text")->required();
  evalc->add_option("value", value_arg, "input value")->required();
  evalc->callback([&] {
    action = [&] {
      Term t = checked(load_term(term_arg));
      Value v = parse_value(value_arg, t.dom());
      out.result(value_arg, render_value(eval(t, v)));
      return kPass;
    };
  });

  // forest
  std::string monoid_arg, word_arg;
  std::vector<std::string> hom_args;
  bool audit = false;
  auto* forest = app.add_subcommand("forest", "Factorisation forest of a word");
  forest->add_option("monoid", monoid_arg, "monoid file or builtin:U1, builtin:contains_ab, builtin:Z<n>")
      ->required();
  forest->add_option("word", word_arg, "input word")->required();
  forest->add_option("--hom", hom_args, "letter=element (default: each element is its own letter)")
      ->allow_extra_args(false);
  forest->add_flag("--audit", audit, "re-check yield, product and depth bound");
  forest->callback([&] {
    action = [&] {
      FiniteMonoid m = resolve_monoid(monoid_arg);
      std::vector<std::string> alphabet;
      std::vector<int> image;
      if (hom_args.empty()) {
        alphabet = m.elements();
        for (int e = 0; e < m.size(); ++e) image.push_back(e);
      }
      for (const auto& h : hom_args) {
        auto eq = h.find('=');
        if (eq == std::string::npos) throw SyntaxError("--hom expects letter=element", 0);
        int e = m.index_of(h.substr(eq + 1));
        if (e < 0) throw TypeError("unknown monoid element '" + h.substr(eq + 1) + "'");
        alphabet.push_back(h.substr(0, eq));
        image.push_back(e);
      }
      Homomorphism hom(alphabet, image, m);
      Word w = parse_literal(word_arg);
      if (w.empty()) throw EvalError("factorisation of the empty word");
      auto letters = hom.letters(w);
      FactTree t = build_factorisation(hom, letters);
      Validation val = validate_factorisation(hom, t);
      std::uint64_t bound = forest_depth_bound(m);
      std::string problem = val.ok ? "" : val.violation;
      if (audit && problem.empty()) {
        if (tree_yield(t) != letters)
          problem = "yield differs from the input";
        else if (tree_depth(t) > bound)
          problem = "depth exceeds the bound " + std::to_string(bound);
        else if (eval_hom_via_forest(hom, letters) != hom.apply(letters))
          problem = "root label differs from the product";
      }
      std::string report = render_tree(hom, t) + "\n" + (problem.empty() ? "valid" : "invalid: " + problem) +
                           "\ndepth " + std::to_string(tree_depth(t)) + " (bound " + std::to_string(bound) + ")";
      if (out.json)
        out.record("forest", word_arg, report, problem.empty() ? "pass" : "fail");
      else
        std::cout << report << "\n";
      return problem.empty() ? kPass : kMismatch;
    };
  });

  // compile-rational / run-pipeline
  std::string rational_arg, pipeline_arg, output_path, against_arg;
  auto* compile = app.add_subcommand("compile-rational", "Compile a rational function into a pipeline");
  compile->add_option("rational", rational_arg, "rational function file")->required();
  compile->add_option("-o,--output", output_path, "pipeline file to write (default: stdout)");
  compile->callback([&] {
    action = [&] {
      RationalFn r = parse_rational(read_text_file(rational_arg), fs::path(rational_arg).parent_path());
      CompiledRational c = compile_rational(r);
      write_or_print(out, output_path, rational_arg, save_pipeline(c.pipeline));
      return kPass;
    };
  });
  auto* run = app.add_subcommand("run-pipeline", "Run a pipeline on a word");
  run->add_option("pipeline", pipeline_arg, "pipeline file")->required();
  run->add_option("word", word_arg, "input word")->required();
  run->add_option("--against", against_arg, "rational function file to compare with");
  run->callback([&] {
    action = [&] {
      Pipeline p = load_pipeline(read_text_file(pipeline_arg));
      Word w = parse_literal(word_arg);
      Word got = eval_pipeline_word(p, w);
      if (!against_arg.empty()) {
        RationalFn r = parse_rational(read_text_file(against_arg), fs::path(against_arg).parent_path());
        Word want = eval_rational_direct(r, w);
        if (got != want) {
          std::string diff = "pipeline: \"" + show_word(got) + "\"\ndirect:   \"" + show_word(want) + "\"";
          if (out.json)
            out.record("run-pipeline", word_arg, show_word(got), "fail");
          else
            std::cout << diff << "\n";
          return kMismatch;
        }
      }
      out.result(word_arg, show_word(got));
      return kPass;
    };
  });

  // check
  cli::CheckRequest req;
  req.seed = 0;
  bool seed_given = false;
  auto* check = app.add_subcommand("check", "Randomised equivalence checks against direct oracles");
  check->add_option("suite", req.suite, "one of rational, registers-fold, registers-homogeneous, fot-commute, std, "
                                        "sst, forest")
      ->required();
  check->add_option("args", req.args, "suite arguments (files, builtin names, library arguments)");
  auto* seed_opt = check->add_option("--seed", req.seed, "base seed (default: LISTFN_SEED or 1)");
  check->add_option("--count", req.count, "number of cases")->check(CLI::PositiveNumber);
  check->add_option("--jobs", req.jobs, "worker threads")->check(CLI::PositiveNumber);
  check->add_option("--type", req.types, "type parameters for fot-commute")->allow_extra_args(false);
  check->callback([&] {
    seed_given = seed_opt->count() > 0;
    action = [&] {
      if (!seed_given) req.seed = default_seed();
      auto records = cli::run_check(req);
      std::size_t failures = 0;
      for (const auto& r : records) {
        if (!r.ok) ++failures;
        if (out.json)
          out.record(r.kind, r.input, r.ok ? r.output : r.output + " (" + r.detail + ")", r.ok ? "pass" : "fail");
        else if (!r.ok)
          std::cout << "FAIL " << r.kind << " " << r.input << " -> " << r.output << " (" << r.detail << ")\n";
      }
      std::string summary = "check " + req.suite + ": " + std::to_string(records.size()) + " cases, " +
                            std::to_string(failures) + " failures, seed " + std::to_string(req.seed);
      if (out.json)
        out.record("check-summary", req.suite, summary, failures ? "fail" : "pass");
      else
        std::cout << summary << "\n";
      return failures ? kMismatch : kPass;
    };
  });

  // sst
  std::string sst_arg, mode = "structured", alphabet = "a,b,c";
  auto* sst = app.add_subcommand("sst", "Run a streaming string transducer");
  sst->add_option("sst", sst_arg, "sst file or builtin:identity|reverse|flip_after|delay")->required();
  sst->add_option("word", word_arg, "input word")->required();
  sst->add_option("--mode", mode, "naive or structured")->check(CLI::IsMember({"naive", "structured"}));
  sst->add_option("--alphabet", alphabet, "alphabet of a builtin sst, comma separated");
  sst->callback([&] {
    action = [&] {
      SSTSpec spec = load_sst(sst_arg, alphabet);
      Word w = parse_literal(word_arg);
      Word got = mode == "naive" ? run_sst_naive(spec, w) : run_sst_structured(structure_sst(spec), w);
      out.result(word_arg, show_word(got));
      return kPass;
    };
  });

  // encode / decode / fot
  std::string type_arg, structure_arg, fot_arg, decode_as, decode_word;
  std::vector<std::string> fot_types;
  bool decode_flag = false, fot_audit = false;
  auto* encode = app.add_subcommand("encode", "Encode a value as a parse-tree structure");
  encode->add_option("type", type_arg, "type of the value")->required();
  encode->add_option("value", value_arg, "value")->required();
  encode->add_option("-o,--output", output_path, "structure file to write (default: stdout)");
  encode->callback([&] {
    action = [&] {
      Type t = parse_type(type_arg);
      write_or_print(out, output_path, value_arg, render_structure(encode_value(parse_value(value_arg, t), t)));
      return kPass;
    };
  });
  auto* decode = app.add_subcommand("decode", "Decode a parse-tree structure");
  decode->add_option("type", type_arg, "expected type")->required();
  decode->add_option("structure", structure_arg, "structure file, or - for stdin")->required();
  decode->callback([&] {
    action = [&] {
      Value v = decode_structure(parse_structure(slurp(structure_arg)), parse_type(type_arg));
      out.result(structure_arg, render_value(v));
      return kPass;
    };
  });
  auto* fot = app.add_subcommand("fot", "Apply a first-order transduction to a structure");
  fot->add_option("transduction", fot_arg, "fot file or builtin:NAME")->required();
  fot->add_option("structure", structure_arg, "structure file, or - for stdin")->required();
  fot->add_option("--type", fot_types, "type parameters of a builtin transduction")->allow_extra_args(false);
  fot->add_flag("--decode", decode_flag, "decode the output at the builtin's output type");
  fot->add_option("--decode-as", decode_as, "decode the output at this type");
  fot->add_option("--decode-word", decode_word, "decode the output as a word structure over this alphabet");
  fot->add_flag("--audit", fot_audit, "re-check the output against the formulas");
  fot->callback([&] {
    action = [&] {
      FOTransduction t;
      std::optional<Type> out_type;
      if (!decode_as.empty()) out_type = parse_type(decode_as);
      if (fot_arg.rfind("builtin:", 0) == 0) {
        std::vector<Type> params;
        for (const auto& s : fot_types) params.push_back(parse_type(s));
        std::string name = fot_arg.substr(8);
        t = builtin_fot(name, params);
        if (decode_flag && !out_type) {
          if (name == "ab_example") throw SyntaxError("ab_example output is a word structure; use --decode-as", 0);
          out_type = builtin_term(name, params).cod();
        }
      } else {
        t = parse_transduction(read_text_file(fot_arg));
        if (decode_flag && !out_type) throw SyntaxError("--decode needs a builtin; use --decode-as", 0);
      }
      Structure in = parse_structure(slurp(structure_arg));
      Structure res = apply_transduction(t, in);
      if (fot_audit)
        if (auto problem = audit_transduction(t, in, res)) throw Mismatch("audit: " + *problem);
      if (!decode_word.empty())
        out.result(structure_arg, show_word(decode_word_structure(res, split_csv(decode_word))));
      else if (out_type)
        out.result(structure_arg, render_value(decode_structure(res, *out_type)));
      else
        write_or_print(out, "", structure_arg, render_structure(res));
      return kPass;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kSyntax;
  }
  out.json = format == "json-lines";
  for (const auto* sub : app.get_subcommands()) out.command = sub->get_name();

  auto report = [&](const std::string& status, const std::string& msg) {
    if (out.json) out.record(out.command, "", msg, status);
    std::cerr << "error: " << msg << "\n";
  };
  try {
    return action();
  } catch (const SyntaxError& e) {
    report("syntax-error", e.what());
    return kSyntax;
  } catch (const Mismatch& e) {
    report("fail", e.what());
    return kMismatch;
  } catch (const std::exception& e) {
    report("error", e.what());
    return kRuntime;
  }
}
