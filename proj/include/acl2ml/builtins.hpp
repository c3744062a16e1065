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

#ifndef ACL2ML_BUILTINS_HPP_
#define ACL2ML_BUILTINS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace acl2ml {

// Group membership and order follow the closed-form valuation table.
enum class BuiltinGroup { Recogniser, Constructor, Accessor, NumberOp, Boolean };

enum class BuiltinOp {
  Symbolp, Characterp, Stringp, Consp, Acl2Numberp, Integerp, Rationalp, ComplexRationalp,
  Cons, Complex,
  Car, Cdr, Denominator, Numerator, Realpart, Imagpart,
  UnaryDiv, UnaryMinus, Plus, Times,
  Equal, If, Less,
};

struct BuiltinInfo {
  std::string_view name;       // canonical printed name
  std::string_view long_name;  // alternative spelling accepted by the reader
  BuiltinOp op;
  std::size_t arity;
  BuiltinGroup group;
  int index;   // 1-based position inside the group (accessors: inside the family)
  int family;  // accessor family j (a^j); 0 otherwise
};

std::span<const BuiltinInfo> builtin_table();
// Accepts either spelling ("+" or "binary-+").
const BuiltinInfo* find_builtin(std::string_view name);
std::string_view group_name(BuiltinGroup g);

}  // namespace acl2ml

#endif  // ACL2ML_BUILTINS_HPP_
