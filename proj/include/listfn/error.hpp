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

#ifndef LISTFN_ERROR_HPP
#define LISTFN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace listfn {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes (syntax 2, type/runtime 3, equivalence 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class TypeError : public Error {
 public:
  using Error::Error;
};

// Guard violations, missing transitions, malformed encodings.
class EvalError : public Error {
 public:
  using Error::Error;
};

class NotAperiodic : public Error {
 public:
  using Error::Error;
};

}  // namespace listfn

#endif  // LISTFN_ERROR_HPP
