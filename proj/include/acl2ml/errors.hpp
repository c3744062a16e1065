/* Copyright 2026 The acl2ml Authors. All Rights Reserved.

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

#ifndef ACL2ML_ERRORS_HPP_
#define ACL2ML_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acl2ml {

struct Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : public Error {
  SyntaxError(const std::string& msg, int line, int col)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct UndefinedSymbol : public Error {
  UndefinedSymbol(const std::string& name, const std::string& site)
      : Error("undefined symbol '" + name + "' in " + site), name(name) {}
  std::string name;
};

struct DuplicateName : public Error {
  explicit DuplicateName(const std::string& name)
      : Error("duplicate name '" + name + "'"), name(name) {}
  std::string name;
};

struct ArityMismatch : public Error {
  ArityMismatch(const std::string& name, std::size_t expected, std::size_t got)
      : Error("'" + name + "' expects " + std::to_string(expected) + " argument(s), got " +
              std::to_string(got)),
        name(name) {}
  std::string name;
};

// Precondition violations of library operations.
struct UsageError : public Error {
  using Error::Error;
};

struct EvalError : public Error {
  enum class Kind { FuelExhausted, DivisionByZero, SortError };
  EvalError(Kind kind, const std::string& msg) : Error(msg), kind(kind) {}
  Kind kind;
};

struct UnvaluedSymbol : public Error {
  explicit UnvaluedSymbol(const std::string& name)
      : Error("symbol '" + name + "' has no value"), name(name) {}
  std::string name;
};

struct UnknownBuiltin : public Error {
  explicit UnknownBuiltin(const std::string& name)
      : Error("'" + name + "' is not a builtin"), name(name) {}
  std::string name;
};

struct UnknownName : public Error {
  explicit UnknownName(const std::string& name) : Error("unknown name '" + name + "'"), name(name) {}
  std::string name;
};

struct NoMapping : public Error {
  explicit NoMapping(const std::string& symbol)
      : Error("no same-cluster counterpart for '" + symbol + "'"), symbol(symbol) {}
  std::string symbol;
};

struct NonEquationalSource : public Error {
  explicit NonEquationalSource(const std::string& name)
      : Error("source lemma '" + name + "' is not an equation"), name(name) {}
  std::string name;
};

}  // namespace acl2ml

#endif  // ACL2ML_ERRORS_HPP_
