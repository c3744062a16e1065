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

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "acl2ml/corpus.hpp"
#include "acl2ml/errors.hpp"
#include "acl2ml/features.hpp"
#include "acl2ml/valuation.hpp"

using namespace acl2ml;

namespace {

const Corpus& mini() {
  static const Corpus c = [] {
    std::ifstream in(ACL2ML_DATA_DIR "/mini.lisp");
    std::ostringstream s;
    s << in.rdbuf();
    return parse_corpus(s.str());
  }();
  return c;
}

const Valuation& val() {
  static const Valuation v = build_valuation(mini()).valuation;
  return v;
}

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational::fraction(n, d); }

using Cells = std::set<std::pair<std::size_t, std::size_t>>;

Cells nonzero_cells(const TermMatrix& m) {
  Cells out;
  for (std::size_t d = 0; d < kMatrixRows; ++d) {
    for (std::size_t c = 0; c < kMatrixCols; ++c) {
      if (!m.at(d, c).is_zero()) out.insert({d, c});
    }
  }
  return out;
}

// Node counts per (depth, column), computed directly from the tree.
void census(const Term& t, std::size_t d, std::map<std::pair<std::size_t, std::size_t>, std::size_t>& out) {
  std::size_t col = t.is_variable() ? 0 : 1 + std::min<std::size_t>(t.arity(), 5);
  if (d < kMatrixRows) ++out[{d, col}];
  for (const auto& a : t.args()) census(a, d + 1, out);
}

Term random_term(std::mt19937_64& rng, int depth) {
  static const std::vector<std::pair<std::string, int>> fns = {
      {"+", 2}, {"*", 2}, {"car", 1}, {"cons", 2}, {"if", 3}, {"fact", 1}, {"helper-fib", 3}, {"equal", 2}};
  std::uniform_int_distribution<int> pick(0, 9);
  int k = pick(rng);
  if (depth == 0 || k < 3) {
    if (k == 0) return Term::constant(Rational(std::uniform_int_distribution<int>(-3, 9)(rng)));
    static const char* vars[] = {"x", "y", "z"};
    return Term::variable(vars[std::uniform_int_distribution<int>(0, 2)(rng)]);
  }
  const auto& [fn, arity] = fns[std::uniform_int_distribution<std::size_t>(0, fns.size() - 1)(rng)];
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, depth - 1));
  return Term::apply(fn, std::move(args));
}

}  // namespace

TEST_CASE("concatenation joins printed digits") {
  CHECK(concat_values(q(4), q(5)) == q(45));
  CHECK(concat_values(q(1), q(1)) == q(11));
  CHECK(concat_values(q(5911, 1000), q(51, 10)) == q(59115100, 10000000));
  CHECK(concat_values(q(1, 2), q(3)) == q(5003, 10000));
  CHECK(concat_values(q(-2), q(1, 4)) == q(-20250));
  std::vector<Rational> three{q(1), q(2), q(3)};
  CHECK(concat_values(three) == q(123));
  CHECK(concat_values(std::vector<Rational>{}) == q(0));
  CHECK(concat_values(std::vector<Rational>{q(7, 2)}) == q(7, 2));
}

TEST_CASE("statement matrix of fact-fact-tail matches the worked table") {
  const Term& t = mini().theorem("fact-fact-tail")->statement;
  TermMatrix m = extract_matrix(t, val());
  CHECK(nonzero_cells(m) == Cells{{0, 3}, {1, 2}, {1, 3}, {2, 0}, {2, 2}, {3, 0}});
  CHECK(m.at(0, 3) == *val().value("implies"));
  CHECK(m.at(1, 2) == *val().value("natp"));
  CHECK(m.at(1, 3) == q(51, 10));
  CHECK(m.at(2, 0) == q(1));
  CHECK(m.at(2, 2) == concat_values(*val().value("fact-tail"), *val().value("fact")));
  CHECK(m.at(3, 0) == q(11));
}

TEST_CASE("body matrix of fact matches the worked table") {
  const Definition& d = *mini().definition("fact");
  std::map<std::string, Rational> self{{"fact", recursive_value(d)}};
  TermMatrix m = extract_matrix(d.body, val(), &self);
  CHECK(nonzero_cells(m) == Cells{{0, 4}, {1, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 2}, {3, 3}, {4, 0}, {4, 1}});
  CHECK(m.at(0, 4) == q(5) + q(1, 10) + q(1, 20));
  CHECK(m.at(1, 1) == q(431, 100));
  CHECK(m.at(1, 2) == *val().value("zp"));
  CHECK(m.at(1, 3) == q(4) + q(1, 10) + q(1, 20) + q(1, 40) + q(1, 80));
  CHECK(m.at(2, 0) == q(11));
  CHECK(m.at(2, 2) == q(-1, 2));
  CHECK(m.at(3, 3) == *val().value("-"));
  CHECK(m.at(4, 0) == q(1));
  CHECK(m.at(4, 1) == q(431, 100));
}

TEST_CASE("single nodes fill exactly one cell at depth 0") {
  for (const char* s : {"x", "7", "t"}) {
    TermMatrix m = extract_matrix(mini().parse_term(s), val());
    CHECK(m.nonzero() == 1);
    CHECK(nonzero_cells(m).begin()->first == 0);
  }
  CHECK(extract_matrix(mini().parse_term("x"), val()).at(0, 0) == q(1));
  CHECK(extract_matrix(mini().parse_term("0"), val()).at(0, 1) == q(43, 10));
}

TEST_CASE("variables are ranked by first occurrence") {
  TermMatrix m = extract_matrix(mini().parse_term("(+ y (* x y))"), val());
  CHECK(m.at(1, 0) == q(1));
  CHECK(m.at(2, 0) == q(21));
  CHECK(variable_value(mini().parse_term("(+ y (* x y))"), "x") == 2);
  CHECK_THROWS_AS(variable_value(mini().parse_term("(+ y y)"), "x"), UsageError);
}

TEST_CASE("wide and deep terms") {
  Corpus c = parse_corpus("(defun f7 (a b c d e f g) a)");
  Valuation v = build_valuation(c).valuation;
  TermMatrix wide = extract_matrix(c.parse_term("(f7 1 2 3 4 5 6 7)"), v);
  CHECK(wide.saturated == 1);
  CHECK(wide.at(0, 6) == *v.value("f7"));
  CHECK(wide.parts[kMatrixCols + 1].size() == 7);

  Term deep = Term::variable("x");
  for (int i = 0; i < 9; ++i) deep = Term::apply("car", {deep});
  TermMatrix dm = extract_matrix(deep, val());
  CHECK(dm.dropped == 3);
  CHECK(dm.at(6, 2) == *val().value("car"));
}

TEST_CASE("unknown symbols have no value") {
  Corpus c = parse_corpus("(defun g (x) x)");
  Valuation bare = Valuation::initial(c);
  CHECK_THROWS_AS(extract_matrix(c.parse_term("(g 1)"), bare), UnvaluedSymbol);
}

TEST_CASE("flatten and unflatten round trip") {
  TermMatrix m = extract_matrix(mini().theorem("fib-fib-tail")->statement, val());
  FeatureVector v = flatten(m);
  CHECK(v.size() == 49);
  CHECK(unflatten(v) == m);
  CHECK(to_point(v).size() == 49);
  CHECK_THROWS_AS(unflatten(FeatureVector(48)), UsageError);
  CHECK(depth(mini().parse_term("(+ x (* y z))"), std::vector<std::size_t>{1, 0}) == 2);
  CHECK_THROWS_AS(depth(mini().parse_term("x"), std::vector<std::size_t>{0}), UsageError);
}

TEST_CASE("every cell aggregates exactly the nodes at its depth and arity") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(rng, 6);
    TermMatrix m = extract_matrix(t, val());
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
    census(t, 0, counts);
    for (std::size_t d = 0; d < kMatrixRows; ++d) {
      for (std::size_t c = 0; c < kMatrixCols; ++c) {
        auto it = counts.find({d, c});
        std::size_t expected = it == counts.end() ? 0 : it->second;
        CHECK(m.parts[d * kMatrixCols + c].size() == expected);
        CHECK((expected == 0) == m.at(d, c).is_zero());
      }
    }
  }
}
