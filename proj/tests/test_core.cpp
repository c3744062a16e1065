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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "acl2ml/builtins.hpp"
#include "acl2ml/corpus.hpp"
#include "acl2ml/errors.hpp"
#include "acl2ml/rational.hpp"
#include "acl2ml/sexpr.hpp"
#include "acl2ml/term.hpp"

using namespace acl2ml;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational::fraction(n, d); }

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
  CHECK(q(2, 4) == q(1, 2));
  CHECK(q(2, 4).to_string() == "1/2");
  CHECK(q(-3, 6).to_string() == "-1/2");
  CHECK(q(3, -6) == q(-1, 2));
  CHECK((q(1, 3) + q(1, 6)) == q(1, 2));
  CHECK((q(1, 2) - q(3, 4)) == q(-1, 4));
  CHECK((q(2, 3) * q(9, 4)) == q(3, 2));
  CHECK((q(1, 2) / q(1, 4)) == q(2));
  CHECK_THROWS_AS(q(1) / q(0), std::domain_error);
  CHECK(q(6, 3).is_integer());
  CHECK(q(-7, 2).abs() == q(7, 2));
  CHECK(q(7, 2).numerator() == q(7));
  CHECK(q(7, 2).denominator() == q(2));
}

TEST_CASE("rational overflow promotes to big values") {
  Rational big(std::int64_t{1} << 62);
  Rational sum = big + big + big;
  CHECK(sum - big - big == big);
  CHECK((sum * sum / sum) == sum);
  CHECK(sum.to_string() == "13835058055282163712");
  CHECK(!sum.to_int64());
}

TEST_CASE("rational parsing and rendering") {
  CHECK(Rational::parse("12") == q(12));
  CHECK(Rational::parse("-7/4") == q(-7, 4));
  CHECK(!Rational::parse("4.31"));
  CHECK(Rational::parse("4.31", true) == q(431, 100));
  CHECK(!Rational::parse("1/0"));
  CHECK(Rational::parse("010") == q(10));
  CHECK(Rational::parse("010/011") == q(10, 11));
  CHECK(Rational::parse("0.5003", true) == q(5003, 10000));
  CHECK(Rational::parse("-0.0625", true) == q(-1, 16));
  CHECK(!Rational::parse("abc"));
  CHECK(q(431, 100).to_fixed(3) == "4.310");
  CHECK(q(2, 3).to_fixed(3) == "0.667");
  CHECK(q(-1, 8).to_fixed(2) == "-0.13");
  CHECK(q(1, 8).to_exact_decimal() == "0.125");
  CHECK(!q(1, 3).to_exact_decimal());
  CHECK(q(1, 3).to_display() == "1/3");
  CHECK(q(5).to_display() == "5");
}

TEST_CASE("rational ordering agrees with cross multiplication") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-50, 50), den(1, 50);
  for (int i = 0; i < 500; ++i) {
    std::int64_t a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    CHECK(((q(a, b) < q(c, d)) == (a * d < c * b)));
    CHECK(((q(a, b) == q(c, d)) == (a * d == c * b)));
  }
}

TEST_CASE("reader lower-cases atoms and tracks positions") {
  auto forms = read_all("(DEFUN f (x)\n  x) ; comment\n(g)");
  REQUIRE(forms.size() == 2);
  CHECK(forms[0].items[0].is_atom("defun"));
  CHECK(forms[1].line == 3);
  CHECK_THROWS_AS(read_all("(a b"), SyntaxError);
  CHECK_THROWS_AS(read_all("a)"), SyntaxError);
  CHECK_THROWS_AS(read_one("a b"), SyntaxError);
}

TEST_CASE("terms share structure and compare structurally") {
  Term a = parse_term("(+ x (* 2 y))");
  Term b = parse_term("(binary-+ x (binary-* 2 y))");
  CHECK(a == b);
  CHECK(a.to_string() == "(+ x (* 2 y))");
  CHECK(a.size() == 5);
  CHECK(a.height() == 2);
  CHECK(variables_of(a) == std::vector<std::string>{"x", "y"});
  CHECK(rename_variables(a, {{"x", "z"}}).to_string() == "(+ z (* 2 y))");
  CHECK(substitute(a, {{"y", parse_term("(car w)")}}).to_string() == "(+ x (* 2 (car w)))");
  CHECK(!(a < a));
  CHECK(((a < parse_term("x")) != (parse_term("x") < a)));
}

TEST_CASE("builtin table has the 23 primitives in table order") {
  auto t = builtin_table();
  CHECK(t.size() == 23);
  std::size_t recognisers = 0, constructors = 0, accessors = 0, ops = 0, booleans = 0;
  for (const auto& b : t) {
    switch (b.group) {
      case BuiltinGroup::Recogniser: ++recognisers; break;
      case BuiltinGroup::Constructor: ++constructors; break;
      case BuiltinGroup::Accessor: ++accessors; break;
      case BuiltinGroup::NumberOp: ++ops; break;
      case BuiltinGroup::Boolean: ++booleans; break;
    }
  }
  CHECK(recognisers == 8);
  CHECK(constructors == 2);
  CHECK(accessors == 6);
  CHECK(ops == 4);
  CHECK(booleans == 3);
  REQUIRE(find_builtin("binary-+"));
  CHECK(find_builtin("binary-+")->name == "+");
  CHECK(find_builtin("numerator")->family == 2);
  CHECK(find_builtin("numerator")->index == 2);
  CHECK(!find_builtin("fact"));
}
