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

#include "acl2ml/features.hpp"

#include <algorithm>

#include "acl2ml/errors.hpp"

namespace acl2ml {

namespace {

std::string render(const Rational& r) { return r.is_integer() ? r.to_string() : r.to_fixed(3); }

struct Walker {
  const Valuation& valuation;
  const std::map<std::string, Rational>* overlay;
  std::map<std::string, std::size_t> var_rank;
  TermMatrix m;

  Rational value_of(const Term& node) {
    switch (node.kind()) {
      case TermKind::Variable: {
        auto [it, fresh] = var_rank.emplace(node.name(), var_rank.size() + 1);
        return Rational(static_cast<std::int64_t>(it->second));
      }
      case TermKind::Constant:
        if (const auto* b = std::get_if<bool>(&node.literal())) return boolean_value(*b);
        return number_value(std::get<Rational>(node.literal()));
      case TermKind::Application:
        break;
    }
    if (overlay) {
      auto it = overlay->find(node.name());
      if (it != overlay->end()) return it->second;
    }
    auto v = valuation.value(node.name());
    if (!v) throw UnvaluedSymbol(node.name());
    return *v;
  }

  void walk(const Term& node, std::size_t d) {
    // Ranks follow the whole term, including dropped nodes.
    Rational v = value_of(node);
    if (d >= kMatrixRows) {
      ++m.dropped;
    } else {
      if (node.arity() > 5) ++m.saturated;
      m.parts[d * kMatrixCols + feature_column(node)].push_back(std::move(v));
    }
    for (const auto& a : node.args()) walk(a, d + 1);
  }
};

}  // namespace

std::size_t feature_column(const Term& node) {
  if (node.is_variable()) return 0;
  return 1 + std::min<std::size_t>(node.arity(), 5);
}

std::size_t TermMatrix::nonzero() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const Rational& r) { return !r.is_zero(); }));
}

std::size_t depth(const Term& t, std::span<const std::size_t> path) {
  const Term* node = &t;
  for (std::size_t i : path) {
    if (i >= node->arity()) throw UsageError("depth: path does not address a node");
    node = &node->arg(i);
  }
  return path.size();
}

Rational concat_values(std::span<const Rational> values) {
  if (values.empty()) return Rational(0);
  if (values.size() == 1) return values[0];
  std::string s = render(values[0]);
  for (std::size_t i = 1; i < values.size(); ++i) {
    for (char c : render(values[i])) {
      if (c != '-' && c != '.') s += c;
    }
  }
  auto r = Rational::parse(s, true);
  if (!r) throw UsageError("concat_values: cannot parse " + s);
  return *r;
}

Rational concat_values(const Rational& a, const Rational& b) {
  const Rational both[] = {a, b};
  return concat_values(std::span<const Rational>(both, 2));
}

TermMatrix extract_matrix(const Term& t, const Valuation& valuation, const std::map<std::string, Rational>* overlay) {
  Walker w{valuation, overlay, {}, {}};
  w.walk(t, 0);
  for (std::size_t i = 0; i < kFeatureLength; ++i) w.m.cells[i] = concat_values(w.m.parts[i]);
  return std::move(w.m);
}

FeatureVector flatten(const TermMatrix& m) { return FeatureVector(m.cells.begin(), m.cells.end()); }

TermMatrix unflatten(const FeatureVector& v) {
  if (v.size() != kFeatureLength) {
    throw UsageError("feature vector must have 49 entries, got " + std::to_string(v.size()));
  }
  TermMatrix m;
  for (std::size_t i = 0; i < kFeatureLength; ++i) {
    m.cells[i] = v[i];
    if (!v[i].is_zero()) m.parts[i].push_back(v[i]);
  }
  return m;
}

Point to_point(const FeatureVector& v) {
  Point p;
  p.reserve(v.size());
  for (const auto& r : v) p.push_back(r.to_double());
  return p;
}

}  // namespace acl2ml
