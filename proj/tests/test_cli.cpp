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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "listfn/error.hpp"
#include "listfn/formats.hpp"
#include "listfn/rational.hpp"
#include "support.hpp"

using namespace listfn;

namespace {

const std::string kData = LISTFN_DATA_DIR;

struct Run {
  int code;
  std::string out;
};

// Arguments are passed through sh, so each one is single-quoted here.
Run cli(const std::vector<std::string>& args, const std::string& stdin_file = "") {
  std::string cmd = "cd '" + kData + "' && '" LISTFN_CLI "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  if (!stdin_file.empty()) cmd += " < '" + stdin_file + "'";
  cmd += " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("workspace loads the data directory") {
  Workspace ws;
  ws.load_dir(kData);
  CHECK(ws.rationals.count("keep_a"));
  CHECK(ws.rationals.count("mark_ab"));
  CHECK(ws.monoids.count("u1"));
  CHECK(ws.groups.count("z3"));
  CHECK(ws.terms.count("comma"));
  CHECK(ws.types.count("nested"));
  CHECK(ws.ssts.count("reverse"));
  CHECK(ws.transductions.count("ab_example"));
  CHECK(ws.structures.count("ababa"));
  CHECK(ws.pipelines.count("keep_a_compiled"));
  CHECK(ws.contains("partial"));
  CHECK_FALSE(ws.contains("missing"));
  CHECK_THROWS(ws.load(kData + "/u1.monoid"));
  CHECK(ws.types.at("nested") == testing::ty("({a,b}*+{c})*×({a}×{b}*)*"));
}

TEST_CASE("monoid, group and types files") {
  FiniteMonoid u1 = parse_monoid(read_text_file(kData + "/u1.monoid"));
  CHECK(u1.size() == 2);
  CHECK(parse_monoid(render_monoid(u1)).size() == 2);
  CHECK(resolve_monoid("builtin:Z4").size() == 4);
  CHECK(resolve_monoid("u1.monoid", kData).size() == 2);
  CHECK_THROWS(resolve_monoid("builtin:nothing"));
  CHECK(file_kind(read_text_file(kData + "/z3.group")) == "group");
  GroupSpec g = parse_group(read_text_file(kData + "/z3.group"));
  CHECK(parse_group(render_group(g)).name() == g.name());
  CHECK_THROWS_AS(parse_monoid("listfn-monoid 1\nelements 1 0\nrow 1 0\n"), SyntaxError);
  CHECK_THROWS(parse_monoid("listfn-monoid 1\nelements p q\nrow p q\nrow q q\nidentity q\n"));
  CHECK_THROWS_AS(parse_types("listfn-types 1\nbad line\n"), SyntaxError);
}

TEST_CASE("typecheck and eval") {
  auto r = cli({"typecheck", "comma.term"});
  CHECK(r.code == 0);
  CHECK(r.out == "{a,b,c,#}* -> {a,b,c}**\n");
  r = cli({"eval", "comma.term", "[a,b,#,c,#,#,a,#,#,#,b,c,#]"});
  CHECK(r.code == 0);
  CHECK(r.out == "[[a,b],[c],[],[a],[],[],[b,c],[]]\n");
  CHECK(cli({"eval", "comma.term", "[a,q]"}).code == 3);
  CHECK(cli({"typecheck", "(compose flat@{a} reverse@{a})"}).code == 3);
  CHECK(cli({"typecheck", "(compose"}).code == 2);
  CHECK(cli({"typecheck", "z3_prefix.term"}).out == "{0,1,2}* -> {0,1,2}* (regular)\n");
  CHECK(cli({"eval", "z3_prefix.term", "[1,2,2]"}).out == "[2,0,1]\n");
  CHECK(cli({"frobnicate"}).code == 2);
}

TEST_CASE("forest") {
  auto r = cli({"forest", "builtin:U1", "--hom", "a=1", "--hom", "b=0", "a"});
  CHECK(r.code == 0);
  CHECK(r.out.find("valid") != std::string::npos);
  CHECK(r.out.find("depth 1 ") != std::string::npos);
  r = cli({"forest", "u1.monoid", "--hom", "a=1", "--hom", "b=0", "abbaab", "--audit"});
  CHECK(r.code == 0);
  CHECK(r.out.find("valid") != std::string::npos);
  CHECK(cli({"forest", "builtin:U1", "--hom", "a=7", "a"}).code != 0);
}

TEST_CASE("compile and run pipelines") {
  auto dir = std::filesystem::temp_directory_path() / "listfn_cli_test";
  std::filesystem::create_directories(dir);
  std::string out = (dir / "keep_a.pipeline").string();
  CHECK(cli({"compile-rational", "keep_a.rational", "-o", out}).code == 0);
  CHECK(read_text_file(out) == read_text_file(kData + "/keep_a_compiled.pipeline"));
  CHECK(cli({"run-pipeline", out, "abab"}).out == "abb\n");
  CHECK(cli({"run-pipeline", out, ""}).out == "\n");
  auto agree = cli({"run-pipeline", out, "abba", "--against", "keep_a.rational"});
  CHECK(agree.code == 0);
  auto diff = cli({"run-pipeline", out, "abab", "--against", "keep_all.rational"});
  CHECK(diff.code == 4);
  CHECK(diff.out.find("abab") != std::string::npos);
  auto json = cli({"--format", "json-lines", "run-pipeline", out, "abab"});
  CHECK(json.out == "{\"input\":\"abab\",\"kind\":\"run-pipeline\",\"output\":\"abb\",\"status\":\"pass\"}\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("check suites") {
  auto r = cli({"check", "rational", "--seed", "7", "--count", "200"});
  CHECK(r.code == 0);
  CHECK(r.out.find("check rational: 200 cases, 0 failures, seed 7") != std::string::npos);
  CHECK(cli({"check", "registers-fold", "--count", "100"}).code == 0);
  CHECK(cli({"check", "fot-commute", "reverse", "--count", "100"}).code == 0);
  CHECK(cli({"check", "sst", "--count", "50"}).code == 0);
  CHECK(cli({"check", "forest", "--count", "50"}).code == 0);
  CHECK(cli({"check", "nope"}).code == 2);
  auto a = cli({"check", "registers-homogeneous", "--count", "30", "--seed", "5"});
  auto b = cli({"check", "registers-homogeneous", "--count", "30", "--seed", "5", "--jobs", "1"});
  CHECK(a.out == b.out);
}

TEST_CASE("sst runs") {
  CHECK(cli({"sst", "reverse.sst", "abc"}).out == "cba\n");
  CHECK(cli({"sst", "reverse.sst", "abc", "--mode", "structured"}).out == "cba\n");
  CHECK(cli({"sst", "partial.sst", "abc"}).code == 3);
  CHECK(cli({"sst", "partial.sst", "abc", "--mode", "structured"}).code == 3);
  CHECK(cli({"sst", "builtin:delay", "acbca", "--alphabet", "a,b,c"}).code == 0);
}

TEST_CASE("encode, transduce and decode") {
  auto enc = cli({"encode", "{a,b}*", "[a,b]"});
  CHECK(enc.code == 0);
  CHECK(parse_structure(enc.out) == encode_value(testing::val("[a,b]", "{a,b}*"), testing::ty("{a,b}*")));
  auto fig = cli({"fot", "builtin:block", "--type", "{a,b}", "--type", "{c,d}", "block_input.structure", "--decode"});
  CHECK(fig.code == 0);
  CHECK(fig.out == "[inl [a,b],inr [c,d],inl [b],inr [c]]\n");
  CHECK(cli({"fot", "ab_example.fot", "ababa.structure", "--decode-word", "a,b"}).out == "aaabb\n");
  CHECK(cli({"decode", "{a,b,c,d}*", "-"}, kData + "/block_input.structure").out == "[a,b,c,d,b,c]\n");
  auto bad = cli({"decode", "{a,b}*", "ababa.structure"});
  CHECK(bad.code == 3);
  CHECK(bad.out.find("pare") != std::string::npos);
}
