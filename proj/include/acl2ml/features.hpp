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

#ifndef ACL2ML_FEATURES_HPP_
#define ACL2ML_FEATURES_HPP_

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "acl2ml/cluster.hpp"
#include "acl2ml/rational.hpp"
#include "acl2ml/term.hpp"
#include "acl2ml/valuation.hpp"

namespace acl2ml {

inline constexpr std::size_t kMatrixRows = 7;  // depth 0..6
inline constexpr std::size_t kMatrixCols = 7;  // variables, arity 0..5
inline constexpr std::size_t kFeatureLength = kMatrixRows * kMatrixCols;

// Column of a node: 0 for variables, 1 + arity otherwise (arity capped at 5).
std::size_t feature_column(const Term& node);

struct TermMatrix {
  std::array<Rational, kFeatureLength> cells{};
  // Per cell, the contributing values in traversal order.
  std::array<std::vector<Rational>, kFeatureLength> parts{};
  std::size_t dropped = 0;    // nodes deeper than the last row
  std::size_t saturated = 0;  // nodes of arity above 5

  const Rational& at(std::size_t depth, std::size_t col) const { return cells[depth * kMatrixCols + col]; }
  std::size_t nonzero() const;

  friend bool operator==(const TermMatrix& a, const TermMatrix& b) { return a.cells == b.cells; }
};

using FeatureVector = std::vector<Rational>;

// Depth of the node reached by following child indices from the root.
// Throws UsageError on an invalid path.
std::size_t depth(const Term& t, std::span<const std::size_t> path);

// Joins the printed digits of several values into one decimal: the first
// renders as an integer or with exactly 3 fraction digits, later ones
// contribute their digits only.
Rational concat_values(std::span<const Rational> values);
Rational concat_values(const Rational& a, const Rational& b);

// Throws UnvaluedSymbol. `overlay` takes precedence over the valuation.
TermMatrix extract_matrix(const Term& t, const Valuation& valuation,
                          const std::map<std::string, Rational>* overlay = nullptr);

FeatureVector flatten(const TermMatrix& m);
// Throws UsageError unless v has 49 entries.
TermMatrix unflatten(const FeatureVector& v);

Point to_point(const FeatureVector& v);

}  // namespace acl2ml

#endif  // ACL2ML_FEATURES_HPP_
