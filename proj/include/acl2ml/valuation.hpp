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

#ifndef ACL2ML_VALUATION_HPP_
#define ACL2ML_VALUATION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acl2ml/cluster.hpp"
#include "acl2ml/corpus.hpp"
#include "acl2ml/rational.hpp"
#include "acl2ml/term.hpp"

namespace acl2ml {

enum class Provenance { Builtin, Recursive, Clustered, Declared };
std::string_view provenance_name(Provenance p);

struct SymbolValue {
  Rational value;
  Provenance provenance = Provenance::Builtin;
  std::size_t cluster = 0;  // Clustered only
  Rational proximity;       // Clustered only, 3 decimals

  friend bool operator==(const SymbolValue&, const SymbolValue&) = default;
};

// The symbol valuation at one epoch. Variables and numbers are not stored;
// they are valued per term (variable_value, number_value).
class Valuation {
 public:
  // Builtins, plus the corpus' declared builtins.
  static Valuation initial(const Corpus& corpus);

  std::optional<Rational> value(std::string_view symbol) const;
  const SymbolValue* entry(std::string_view symbol) const;
  void set(const std::string& symbol, SymbolValue v) { values_[symbol] = std::move(v); }
  const std::map<std::string, SymbolValue, std::less<>>& entries() const { return values_; }

  std::size_t epoch() const { return epoch_; }
  void set_epoch(std::size_t e) { epoch_ = e; }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::map<std::string, SymbolValue, std::less<>> values_;
  std::size_t epoch_ = 0;
};

// Closed-form values. Throws UnknownBuiltin.
Rational builtin_value(std::string_view symbol);
Rational number_value(const Rational& n);
// t and nil sit in the boolean band next to equal/if/<.
Rational boolean_value(bool b);
// 1-based rank of the first occurrence of v in pre-order. Throws UsageError
// when v does not occur.
std::size_t variable_value(const Term& t, const std::string& v);

Rational measure_value(MeasureScheme m);
// Precondition: def.recursive.
Rational recursive_value(const Definition& def);

struct ValuationOptions {
  int granularity = 3;
  std::uint64_t seed = 0;
};

// Definition clustering of the latest epoch, kept for analogy scoring.
struct DefinitionClustering {
  std::vector<std::string> names;           // definitions in corpus order
  std::vector<std::vector<double>> points;  // their body feature vectors
  Clustering clustering;

  std::optional<std::size_t> position(std::string_view name) const;
};

struct ValuationResult {
  Valuation valuation;
  DefinitionClustering definitions;
};

// One recurrence step: clusters the bodies of definitions 0..count-1 under
// `previous` and values their head symbols. Builtins and declared symbols
// carry over unchanged.
ValuationResult on_new_definition(const Corpus& corpus, std::size_t count, const Valuation& previous,
                                  const ValuationOptions& options);

// Runs the recurrence over every loaded definition.
ValuationResult build_valuation(const Corpus& corpus, const ValuationOptions& options = {});

}  // namespace acl2ml

#endif  // ACL2ML_VALUATION_HPP_
