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

#ifndef LISTFN_TOOLS_CHECKS_HPP
#define LISTFN_TOOLS_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace listfn::cli {

struct CaseRecord {
  std::string kind;
  std::string input;
  std::string output;
  bool ok = true;
  std::string detail;  // expected value or error message on failure
};

struct CheckRequest {
  std::string suite;              // rational, registers-fold, registers-homogeneous, fot-commute, std, sst, forest
  std::vector<std::string> args;  // suite-specific: files, builtin names, type parameters
  std::vector<std::string> types;
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::size_t jobs = 1;
};

// Runs every case; the result order is the case order regardless of jobs.
std::vector<CaseRecord> run_check(const CheckRequest& req);
std::vector<std::string> check_suites();

}  // namespace listfn::cli

#endif  // LISTFN_TOOLS_CHECKS_HPP
