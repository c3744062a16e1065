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

#ifndef ACL2ML_SEXPR_HPP_
#define ACL2ML_SEXPR_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace acl2ml {

// Raw reader output. Atoms are lower-cased; positions are 1-based.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int col = 1;

  bool is_atom() const { return !is_list; }
  bool is_atom(std::string_view s) const { return !is_list && atom == s; }
};

// Reads every top-level form. Throws SyntaxError.
std::vector<SExpr> read_all(std::string_view text);
// Reads exactly one form.
SExpr read_one(std::string_view text);

}  // namespace acl2ml

#endif  // ACL2ML_SEXPR_HPP_
