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

#include "acl2ml/builtins.hpp"

#include <array>

namespace acl2ml {

namespace {

using G = BuiltinGroup;
using O = BuiltinOp;

constexpr std::array<BuiltinInfo, 23> kTable{{
    {"symbolp", "symbolp", O::Symbolp, 1, G::Recogniser, 1, 0},
    {"characterp", "characterp", O::Characterp, 1, G::Recogniser, 2, 0},
    {"stringp", "stringp", O::Stringp, 1, G::Recogniser, 3, 0},
    {"consp", "consp", O::Consp, 1, G::Recogniser, 4, 0},
    {"acl2-numberp", "acl2-numberp", O::Acl2Numberp, 1, G::Recogniser, 5, 0},
    {"integerp", "integerp", O::Integerp, 1, G::Recogniser, 6, 0},
    {"rationalp", "rationalp", O::Rationalp, 1, G::Recogniser, 7, 0},
    {"complex-rationalp", "complex-rationalp", O::ComplexRationalp, 1, G::Recogniser, 8, 0},
    {"cons", "cons", O::Cons, 2, G::Constructor, 1, 0},
    {"complex", "complex", O::Complex, 2, G::Constructor, 2, 0},
    {"car", "car", O::Car, 1, G::Accessor, 1, 1},
    {"cdr", "cdr", O::Cdr, 1, G::Accessor, 2, 1},
    {"denominator", "denominator", O::Denominator, 1, G::Accessor, 1, 2},
    {"numerator", "numerator", O::Numerator, 1, G::Accessor, 2, 2},
    {"realpart", "realpart", O::Realpart, 1, G::Accessor, 1, 3},
    {"imagpart", "imagpart", O::Imagpart, 1, G::Accessor, 2, 3},
    {"unary-/", "unary-/", O::UnaryDiv, 1, G::NumberOp, 1, 0},
    {"unary--", "unary--", O::UnaryMinus, 1, G::NumberOp, 2, 0},
    {"+", "binary-+", O::Plus, 2, G::NumberOp, 3, 0},
    {"*", "binary-*", O::Times, 2, G::NumberOp, 4, 0},
    {"equal", "equal", O::Equal, 2, G::Boolean, 1, 0},
    {"if", "if", O::If, 3, G::Boolean, 2, 0},
    {"<", "<", O::Less, 2, G::Boolean, 3, 0},
}};

}  // namespace

std::span<const BuiltinInfo> builtin_table() { return kTable; }

const BuiltinInfo* find_builtin(std::string_view name) {
  for (const auto& b : kTable) {
    if (b.name == name || b.long_name == name) return &b;
  }
  return nullptr;
}

std::string_view group_name(BuiltinGroup g) {
  switch (g) {
    case G::Recogniser: return "recognisers";
    case G::Constructor: return "constructors";
    case G::Accessor: return "accessors";
    case G::NumberOp: return "number-ops";
    case G::Boolean: return "boolean-ops";
  }
  return "";
}

}  // namespace acl2ml
