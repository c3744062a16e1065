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

#include "acl2ml/term.hpp"

#include <algorithm>

namespace acl2ml {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::string literal_to_string(const Literal& lit) {
  if (const auto* b = std::get_if<bool>(&lit)) return *b ? "t" : "nil";
  return std::get<Rational>(lit).to_string();
}

Term::Term() {
  static const Term nil = Term::boolean(false);
  node_ = nil.node_;
}

Term Term::variable(std::string name) {
  std::size_t h = mix(1, std::hash<std::string>{}(name));
  return Term(std::make_shared<const Node>(
      Node{TermKind::Variable, std::move(name), Literal{false}, {}, 1, 0, h}));
}

Term Term::constant(Rational value) {
  Literal lit{value};
  std::string name = literal_to_string(lit);
  std::size_t h = mix(2, std::hash<std::string>{}(name));
  return Term(std::make_shared<const Node>(
      Node{TermKind::Constant, std::move(name), std::move(lit), {}, 1, 0, h}));
}

Term Term::boolean(bool value) {
  Literal lit{value};
  std::string name = literal_to_string(lit);
  std::size_t h = mix(2, std::hash<std::string>{}(name));
  return Term(std::make_shared<const Node>(
      Node{TermKind::Constant, std::move(name), std::move(lit), {}, 1, 0, h}));
}

Term Term::apply(std::string fn, std::vector<Term> args) {
  std::size_t size = 1;
  std::size_t height = 0;
  std::size_t h = mix(3, std::hash<std::string>{}(fn));
  for (const auto& a : args) {
    size += a.size();
    height = std::max(height, a.height() + 1);
    h = mix(h, a.hash());
  }
  return Term(std::make_shared<const Node>(
      Node{TermKind::Application, std::move(fn), Literal{false}, std::move(args), size, height, h}));
}

std::string Term::to_string() const {
  if (!is_application()) return name();
  std::string s = "(" + name();
  for (const auto& a : args()) {
    s += ' ';
    s += a.to_string();
  }
  s += ')';
  return s;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size() || a.name() != b.name()) {
    return false;
  }
  if (a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.arg(i) == b.arg(i))) return false;
  }
  return true;
}

bool operator<(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return false;
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.name() != b.name()) return a.name() < b.name();
  if (a.arity() != b.arity()) return a.arity() < b.arity();
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a.arg(i) < b.arg(i)) return true;
    if (b.arg(i) < a.arg(i)) return false;
  }
  return false;
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Variable:
      if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
      break;
    case TermKind::Constant:
      break;
    case TermKind::Application:
      for (const auto& a : t.args()) collect_variables(a, out);
      break;
  }
}

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

void collect_functions(const Term& t, std::set<std::string>& out) {
  if (!t.is_application()) return;
  out.insert(t.name());
  for (const auto& a : t.args()) collect_functions(a, out);
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  if (t.is_constant()) out.insert(t.name());
  for (const auto& a : t.args()) collect_constants(a, out);
}

bool mentions_function(const Term& t, const std::string& fn) {
  if (!t.is_application()) return false;
  if (t.name() == fn) return true;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return mentions_function(a, fn); });
}

Term rename_variables(const Term& t, const std::map<std::string, std::string>& renaming) {
  switch (t.kind()) {
    case TermKind::Variable: {
      auto it = renaming.find(t.name());
      return it == renaming.end() ? t : Term::variable(it->second);
    }
    case TermKind::Constant:
      return t;
    case TermKind::Application: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const auto& a : t.args()) args.push_back(rename_variables(a, renaming));
      return Term::apply(t.name(), std::move(args));
    }
  }
  return t;
}

Term substitute(const Term& t, const std::map<std::string, Term>& binding) {
  switch (t.kind()) {
    case TermKind::Variable: {
      auto it = binding.find(t.name());
      return it == binding.end() ? t : it->second;
    }
    case TermKind::Constant:
      return t;
    case TermKind::Application: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const auto& a : t.args()) args.push_back(substitute(a, binding));
      return Term::apply(t.name(), std::move(args));
    }
  }
  return t;
}

}  // namespace acl2ml
