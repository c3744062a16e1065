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

#include "acl2ml/valuation.hpp"

#include <cmath>

#include "acl2ml/builtins.hpp"
#include "acl2ml/errors.hpp"
#include "acl2ml/features.hpp"

namespace acl2ml {

namespace {

// sum_{j=1..i} 1 / (10 * 2^(j-1))
Rational group_sum(int i) {
  Rational s(0);
  std::int64_t pow = 1;
  for (int j = 1; j <= i; ++j) {
    s = s + Rational::fraction(1, 10 * pow);
    pow *= 2;
  }
  return s;
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Builtin: return "builtin";
    case Provenance::Recursive: return "recursive";
    case Provenance::Clustered: return "clustered";
    case Provenance::Declared: return "declared";
  }
  return "";
}

Rational builtin_value(std::string_view symbol) {
  const BuiltinInfo* b = find_builtin(symbol);
  if (!b) throw UnknownBuiltin(std::string(symbol));
  switch (b->group) {
    case BuiltinGroup::Recogniser: return Rational(1) + group_sum(b->index);
    case BuiltinGroup::Constructor: return Rational(2) + group_sum(b->index);
    case BuiltinGroup::Accessor:
      return Rational(3) + Rational::fraction(1, 10 * b->family) + Rational::fraction(b->index - 1, 100);
    case BuiltinGroup::NumberOp: return Rational(4) + group_sum(b->index);
    case BuiltinGroup::Boolean: return Rational(5) + group_sum(b->index);
  }
  throw UnknownBuiltin(std::string(symbol));
}

Rational number_value(const Rational& n) {
  const Rational base = Rational::fraction(43, 10);
  if (n.is_zero()) return base;
  Rational a = n.abs();
  if (a < Rational(1)) return base + a / Rational(10);
  return base + Rational(1) / (Rational(100) * a);
}

Rational boolean_value(bool b) { return b ? Rational::fraction(53, 10) : Rational::fraction(54, 10); }

std::size_t variable_value(const Term& t, const std::string& v) {
  auto vars = variables_of(t);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == v) return i + 1;
  }
  throw UsageError("variable '" + v + "' does not occur in " + t.to_string());
}

Rational measure_value(MeasureScheme m) {
  switch (m) {
    case MeasureScheme::NatValue: return Rational::fraction(1, 2);
    case MeasureScheme::ListLen: return Rational::fraction(3, 5);
    case MeasureScheme::Unknown: return Rational::fraction(7, 10);
  }
  return Rational::fraction(7, 10);
}

Rational recursive_value(const Definition& def) {
  if (!def.recursive) throw UsageError("recursive_value: '" + def.name + "' is not recursive");
  return -measure_value(def.measure);
}

Valuation Valuation::initial(const Corpus& corpus) {
  Valuation v;
  for (const auto& b : builtin_table()) v.set(std::string(b.name), {builtin_value(b.name), Provenance::Builtin, 0, {}});
  for (const auto& d : corpus.declared_builtins()) v.set(d.name, {d.value, Provenance::Declared, 0, {}});
  return v;
}

const SymbolValue* Valuation::entry(std::string_view symbol) const {
  if (const BuiltinInfo* b = find_builtin(symbol)) symbol = b->name;
  auto it = values_.find(symbol);
  return it == values_.end() ? nullptr : &it->second;
}

std::optional<Rational> Valuation::value(std::string_view symbol) const {
  const SymbolValue* e = entry(symbol);
  if (!e) return std::nullopt;
  return e->value;
}

std::optional<std::size_t> DefinitionClustering::position(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

ValuationResult on_new_definition(const Corpus& corpus, std::size_t count, const Valuation& previous,
                                  const ValuationOptions& options) {
  const auto& defs = corpus.definitions();
  if (count == 0 || count > defs.size()) throw UsageError("on_new_definition: bad definition count");
  ValuationResult out{previous, {}};
  for (std::size_t i = 0; i < count; ++i) {
    const Definition& d = defs[i];
    std::map<std::string, Rational> overlay;
    if (d.recursive) overlay[d.name] = recursive_value(d);
    out.definitions.names.push_back(d.name);
    out.definitions.points.push_back(to_point(flatten(extract_matrix(d.body, previous, &overlay))));
  }
  std::size_t n = num_clusters(count, options.granularity);
  out.definitions.clustering = kmeans(out.definitions.points, n, derive_seed(options.seed, count));
  for (const auto& c : out.definitions.clustering.clusters) {
    for (std::size_t m : c.members) {
      double p = proximity(out.definitions.points, c, m);
      Rational q = Rational::fraction(static_cast<std::int64_t>(std::llround(p * 1000.0)), 1000);
      SymbolValue sv;
      sv.value = Rational(5) + Rational(2 * static_cast<std::int64_t>(c.index)) + q;
      sv.provenance = Provenance::Clustered;
      sv.cluster = c.index;
      sv.proximity = q;
      out.valuation.set(defs[m].name, std::move(sv));
    }
  }
  out.valuation.set_epoch(count);
  return out;
}

ValuationResult build_valuation(const Corpus& corpus, const ValuationOptions& options) {
  ValuationResult r{Valuation::initial(corpus), {}};
  for (std::size_t k = 1; k <= corpus.definitions().size(); ++k) {
    r = on_new_definition(corpus, k, r.valuation, options);
  }
  return r;
}

}  // namespace acl2ml
