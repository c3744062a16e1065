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

#ifndef ACL2ML_TERM_HPP_
#define ACL2ML_TERM_HPP_

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "acl2ml/rational.hpp"

namespace acl2ml {

// A constant literal: a number, or one of the symbols t / nil.
using Literal = std::variant<Rational, bool>;

enum class TermKind : unsigned char { Variable, Constant, Application };

// Immutable first-order term. Copies share structure; size and a structural
// hash are computed once at construction.
class Term {
 public:
  // nil
  Term();

  static Term variable(std::string name);
  static Term constant(Rational value);
  static Term boolean(bool value);
  static Term apply(std::string fn, std::vector<Term> args);

  TermKind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == TermKind::Variable; }
  bool is_constant() const { return kind() == TermKind::Constant; }
  bool is_application() const { return kind() == TermKind::Application; }

  // Variable name, function symbol, or the printed constant.
  const std::string& name() const { return node_->name; }
  const Literal& literal() const { return node_->literal; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }
  std::size_t arity() const { return node_->args.size(); }

  // Node count.
  std::size_t size() const { return node_->size; }
  // Longest root-to-leaf edge count.
  std::size_t height() const { return node_->height; }
  std::size_t hash() const { return node_->hash; }

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node {
    TermKind kind;
    std::string name;
    Literal literal;
    std::vector<Term> args;
    std::size_t size;
    std::size_t height;
    std::size_t hash;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string literal_to_string(const Literal& lit);

// Free variables in order of first occurrence (left-to-right, pre-order).
std::vector<std::string> variables_of(const Term& t);
void collect_variables(const Term& t, std::vector<std::string>& out);
// Function symbols applied anywhere in t.
void collect_functions(const Term& t, std::set<std::string>& out);
// Constants anywhere in t, printed form.
void collect_constants(const Term& t, std::set<std::string>& out);
bool mentions_function(const Term& t, const std::string& fn);

Term rename_variables(const Term& t, const std::map<std::string, std::string>& renaming);
Term substitute(const Term& t, const std::map<std::string, Term>& binding);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

}  // namespace acl2ml

#endif  // ACL2ML_TERM_HPP_
