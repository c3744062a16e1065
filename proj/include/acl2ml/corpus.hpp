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

#ifndef ACL2ML_CORPUS_HPP_
#define ACL2ML_CORPUS_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acl2ml/rational.hpp"
#include "acl2ml/term.hpp"

namespace acl2ml {

// ---------------------------------------------------------------------------
// Sorts

enum class Sort { Nat, Int, Rational, Bool, List, Any };

std::string_view sort_name(Sort s);
std::optional<Sort> parse_sort(std::string_view s);

// Least upper bound. Numeric sorts form the chain nat < int < rational; mixing
// classes (numeric, bool, list) gives any.
Sort join(Sort a, Sort b);

// Whether a term of sort `actual` may fill a slot of sort `expected`. Numeric
// sorts are interchangeable; `any` slots take everything; an `any`-sorted
// variable fits everywhere, an `any`-sorted application only in `any` slots.
bool accepts(Sort expected, Sort actual, bool actual_is_variable);

// natp -> nat, integerp -> int, rationalp -> rational, true-listp/nat-listp -> list.
std::optional<Sort> recognizer_sort(std::string_view fn);
// Inverse of the above, used to emit hypotheses for fresh variables.
std::optional<std::string> recognizer_for(Sort s);

class SortTable {
 public:
  Sort param(const std::string& fn, std::size_t i) const;
  Sort result(const std::string& fn) const;
  void set_param(const std::string& fn, std::size_t i, Sort s);
  void set_result(const std::string& fn, Sort s);

  const std::map<std::pair<std::string, std::size_t>, Sort>& params() const { return params_; }
  const std::map<std::string, Sort>& results() const { return results_; }

 private:
  std::map<std::pair<std::string, std::size_t>, Sort> params_;
  std::map<std::string, Sort> results_;
};

// ---------------------------------------------------------------------------
// Corpus items

enum class MeasureScheme { NatValue, ListLen, Unknown };
std::string_view measure_name(MeasureScheme m);

struct Definition {
  std::string name;
  std::vector<std::string> params;
  Term body;
  bool recursive = false;
  MeasureScheme measure = MeasureScheme::Unknown;
  std::size_t index = 0;  // ordinal over prelude + user forms
  bool prelude = false;
};

struct Theorem {
  std::string name;
  Term statement;
  std::vector<Term> hypotheses;
  Term conclusion;
  std::vector<std::string> uses;
  std::size_t index = 0;

  // (equal lhs rhs) conclusions only.
  bool is_equation() const;
};

struct DeclaredBuiltin {
  std::string name;
  std::size_t arity;
  Rational value;
};

struct SortDeclaration {
  std::vector<Sort> params;
  Sort result;
};

class Corpus {
 public:
  struct ItemRef {
    bool is_definition;
    std::size_t position;  // into definitions() or theorems()
  };

  // User forms in source order (prelude excluded).
  const std::vector<ItemRef>& items() const { return items_; }
  // Every loaded definition in dependency order: referenced prelude first.
  const std::vector<Definition>& definitions() const { return definitions_; }
  const std::vector<Theorem>& theorems() const { return theorems_; }
  const std::vector<DeclaredBuiltin>& declared_builtins() const { return declared_; }
  const std::map<std::string, SortDeclaration>& sort_declarations() const { return sort_decls_; }
  // Prelude definitions not referenced by the text. They stay callable by the
  // evaluator and by parse_term but take no part in clustering.
  const std::vector<Definition>& dormant_definitions() const { return dormant_; }

  const Definition* definition(std::string_view name) const;
  const Theorem* theorem(std::string_view name) const;
  std::optional<std::size_t> arity(std::string_view fn) const;
  bool is_builtin(std::string_view fn) const;
  bool is_declared_builtin(std::string_view fn) const;
  bool is_prelude(std::string_view fn) const;
  // Builtins, declared builtins, prelude definitions, and constants.
  bool is_background(std::string_view symbol) const;

  const SortTable& sorts() const { return sorts_; }
  // Hypothesis-derived variable sorts of one theorem; others are `any`.
  std::map<std::string, Sort> variable_sorts(const Theorem& thm) const;
  // Static sort of a term given variable sorts.
  Sort sort_of(const Term& t, const std::map<std::string, Sort>& vars) const;

  // Parses one term over this corpus' signature. Free variables are allowed
  // unless `ground` is set.
  Term parse_term(std::string_view text, bool ground = false) const;

  // Definitions whose bodies the named definition or theorem reaches.
  std::set<std::string> dependency_cone(const std::string& name) const;

  // Digest input: the user text with line endings and trailing blanks normalized.
  const std::string& normalized_text() const { return normalized_text_; }

 private:
  friend class CorpusBuilder;
  friend Corpus parse_corpus(std::string_view text);

  std::vector<ItemRef> items_;
  std::vector<Definition> definitions_;
  std::vector<Definition> dormant_;
  std::map<std::string, SortDeclaration> sort_decls_;
  std::vector<Theorem> theorems_;
  std::vector<DeclaredBuiltin> declared_;
  std::map<std::string, std::size_t, std::less<>> def_index_;
  std::map<std::string, std::size_t, std::less<>> dormant_index_;
  std::map<std::string, std::size_t, std::less<>> thm_index_;
  std::map<std::string, std::size_t, std::less<>> declared_index_;
  SortTable sorts_;
  std::string normalized_text_;
};

// Parses a corpus file. Prelude definitions referenced by the text are loaded
// ahead of the user forms. Throws SyntaxError, UndefinedSymbol, DuplicateName,
// ArityMismatch.
Corpus parse_corpus(std::string_view text);

// Parses a term against the builtins and the full prelude.
Term parse_term(std::string_view text);

// Precondition: def.recursive. Throws UsageError otherwise.
MeasureScheme infer_measure(const Definition& def);

SortTable infer_sorts(const Corpus& corpus);

std::string_view prelude_text();

}  // namespace acl2ml

#endif  // ACL2ML_CORPUS_HPP_
