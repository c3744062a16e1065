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

#include "acl2ml/sexpr.hpp"

#include <cctype>

#include "acl2ml/errors.hpp"

namespace acl2ml {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_blank();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip_blank();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", line_, col_);
    char c = text_[pos_];
    int line = line_;
    int col = col_;
    if (c == '(') {
      advance();
      SExpr list;
      list.is_list = true;
      list.line = line;
      list.col = col;
      for (;;) {
        skip_blank();
        if (pos_ >= text_.size()) throw SyntaxError("unbalanced '('", line, col);
        if (text_[pos_] == ')') {
          advance();
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') throw SyntaxError("unexpected ')'", line, col);
    if (c == '"') throw SyntaxError("string literals are not supported", line, col);
    if (c == '\'' || c == '`' || c == ',') throw SyntaxError("quotation is not supported", line, col);
    if (c == '#') throw SyntaxError("character and complex literals are not supported", line, col);
    if (c == '|') throw SyntaxError("escaped symbols are not supported", line, col);
    SExpr atom;
    atom.line = line;
    atom.col = col;
    while (pos_ < text_.size() && !delimiter(text_[pos_])) {
      char ch = text_[pos_];
      if (ch == '"' || ch == '\'' || ch == '`' || ch == ',' || ch == '#' || ch == '|') {
        throw SyntaxError(std::string("unexpected character '") + ch + "'", line_, col_);
      }
      if (static_cast<unsigned char>(ch) >= 0x80) {
        throw SyntaxError("non-ASCII character in identifier", line_, col_);
      }
      atom.atom += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      advance();
    }
    return atom;
  }

 private:
  static bool delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<SExpr> read_all(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

SExpr read_one(std::string_view text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.at_end()) throw SyntaxError("trailing input after expression", 1, 1);
  return e;
}

}  // namespace acl2ml
