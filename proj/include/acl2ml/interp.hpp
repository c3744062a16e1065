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

#ifndef ACL2ML_INTERP_HPP_
#define ACL2ML_INTERP_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "acl2ml/corpus.hpp"
#include "acl2ml/rational.hpp"
#include "acl2ml/term.hpp"

namespace acl2ml {

// Runtime value: nil (also false and the empty list), t, a rational, or a
// cons cell whose cdr is again a list.
class Value {
 public:
  enum class Kind : unsigned char { Nil, T, Num, Cons };

  Value() = default;
  static Value nil() { return Value(); }
  static Value t();
  static Value boolean(bool b) { return b ? t() : nil(); }
  static Value number(Rational r);
  // Throws EvalError(SortError) when `tail` is not a list.
  static Value cons(Value head, Value tail);
  static Value list(const std::vector<Value>& items);

  Kind kind() const { return kind_; }
  bool is_nil() const { return kind_ == Kind::Nil; }
  bool truthy() const { return kind_ != Kind::Nil; }
  bool is_number() const { return kind_ == Kind::Num; }
  bool is_cons() const { return kind_ == Kind::Cons; }
  bool is_list() const { return kind_ == Kind::Nil || kind_ == Kind::Cons; }

  const Rational& num() const { return num_; }
  const Value& car() const;
  const Value& cdr() const;
  std::vector<Value> elements() const;

  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  struct Cell;
  Kind kind_ = Kind::Nil;
  Rational num_;
  std::shared_ptr<const Cell> cell_;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const noexcept { return v.hash(); }
};

using Env = std::map<std::string, Value>;

struct EvalContext {
  explicit EvalContext(std::uint64_t fuel) : fuel(fuel) {}

  struct Key {
    std::size_t fn;
    std::vector<Value> args;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::uint64_t fuel;
  std::size_t depth = 0;
  std::unordered_map<Key, Value, KeyHash> memo;
};

// Compiled evaluator over one corpus. The corpus must outlive it.
class Interpreter {
 public:
  explicit Interpreter(const Corpus& corpus);
  ~Interpreter();
  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  const Corpus& corpus() const { return corpus_; }

  // Throws EvalError(FuelExhausted | DivisionByZero | SortError) and
  // UndefinedSymbol for free variables missing from env.
  Value eval(const Term& t, const Env& env, std::uint64_t fuel) const;
  Value eval(const Term& t, const Env& env, EvalContext& ctx) const;

  // A term compiled against an ordered variable list.
  class Program;
  std::shared_ptr<const Program> compile(const Term& t, const std::vector<std::string>& vars) const;
  Value run(const Program& p, std::span<const Value> args, EvalContext& ctx) const;

  // Applies a function symbol to already evaluated arguments; costs 1 fuel.
  Value apply(const std::string& fn, std::span<const Value> args, EvalContext& ctx) const;

 private:
  struct Impl;
  const Corpus& corpus_;
  std::unique_ptr<Impl> impl_;
};

Value eval(const Corpus& corpus, const Term& t, const Env& env, std::uint64_t fuel);

// Test data

struct TestBudget {
  std::size_t bound = 7;
  std::size_t max_list_length = 4;
  std::size_t random_tests = 200;
  std::uint64_t fuel = 100000;
  std::size_t max_exhaustive = 4096;
  std::uint64_t seed = 0;
};

// Exhaustive small prefix only.
std::vector<Value> gen_prefix(Sort sort, std::size_t bound, std::size_t max_list_length = 4);
// Prefix followed by seeded random larger values.
std::vector<Value> gen_values(Sort sort, std::size_t bound, std::uint64_t seed,
                              std::size_t max_list_length = 4);

struct Conjecture {
  std::vector<Term> hypotheses;
  Term lhs;
  Term rhs;
  std::vector<std::pair<std::string, Sort>> variables;

  // (implies (and hyps...) (equal lhs rhs)), or the bare equation.
  Term statement() const;
  std::string to_string() const;
};

struct Verdict {
  enum class Kind { Falsified, Survived, Undecided };
  Kind kind = Kind::Survived;
  Env assignment;                 // Falsified only
  std::size_t tests_run = 0;      // assignments satisfying the hypotheses and compared
  std::size_t fuel_exhausted = 0;
  std::size_t attempted = 0;

  bool survived() const { return kind == Kind::Survived; }
  bool falsified() const { return kind == Kind::Falsified; }
};

std::string_view verdict_name(Verdict::Kind k);

Verdict check_conjecture(const Interpreter& interp, const Conjecture& c, const TestBudget& budget = {});
Verdict check_conjecture(const Corpus& corpus, const Conjecture& c, const TestBudget& budget = {});

}  // namespace acl2ml

#endif  // ACL2ML_INTERP_HPP_
