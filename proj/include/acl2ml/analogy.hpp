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

#ifndef ACL2ML_ANALOGY_HPP_
#define ACL2ML_ANALOGY_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "acl2ml/cluster.hpp"
#include "acl2ml/corpus.hpp"
#include "acl2ml/interp.hpp"
#include "acl2ml/term.hpp"
#include "acl2ml/valuation.hpp"

namespace acl2ml {

struct AnalogyMapping {
  // Non-shared source symbol -> target-side symbol. Everything else maps to
  // itself.
  std::map<std::string, std::string> pairs;
  std::set<std::string> shared;
  double score = 1.0;       // product of pair proximities
  std::size_t aligned = 0;  // pairs that agree with the structural alignment

  const std::string& operator()(const std::string& symbol) const;
  std::string to_string() const;
};

struct SourceTarget {
  std::string st;
  std::string sl;
  std::string tt;
  double frequency = 0;  // ST's co-occurrence with TT
};

struct Suggestion {
  Conjecture conjecture;
  Verdict verdict;
  int iteration = 1;
  AnalogyMapping mapping;
  SourceTarget source;
  std::size_t size = 0;  // lhs size + rhs size
};

// Background symbols and constants common to both theorems: found in both
// statements, or in both dependency cones (definition bodies and the
// statements of used lemmas).
std::set<std::string> shared_symbols(const Corpus& corpus, const Theorem& st, const Theorem& tt);

// Non-background symbols of the target side: definitions reached from TT.
std::set<std::string> target_symbols(const Corpus& corpus, const Theorem& tt);

// Pairs of user symbols sitting at the same position of the two statements,
// extended through the bodies of paired definitions.
std::map<std::string, std::string> align_symbols(const Corpus& corpus, const Theorem& st, const Theorem& tt);

// Every non-shared user symbol of ST and SL goes to a target-side symbol in
// its definition cluster, or to its aligned partner. Ordered by aligned pair
// count, then score. Throws NoMapping.
std::vector<AnalogyMapping> analogy_maps(const Corpus& corpus, const Theorem& st, const Theorem& sl,
                                         const Theorem& tt, const DefinitionClustering& defs,
                                         const std::set<std::string>& shared, std::size_t cap = 64);

struct MutationOptions {
  TestBudget budget;
  std::size_t pair_cap = 20000;
  std::size_t term_cap = 200000;
  std::size_t samples = 24;  // fingerprint assignments per hypothesis rung
  unsigned threads = 0;
};

// Variable sorts of a source lemma plus `count` fresh names.
struct VariablePool {
  std::vector<std::string> names;
  std::map<std::string, Sort> sorts;
};

VariablePool make_pool(const Corpus& corpus, const AnalogyMapping& a, const Theorem& sl);

// Results are deduplicated and ordered by size, then term order.
std::vector<Term> tree_rec(const Corpus& corpus, const AnalogyMapping& a, const Term& t, const VariablePool& pool,
                           std::size_t term_cap = 200000);
std::vector<Term> node_exp(const Corpus& corpus, const std::set<std::string>& f, const Term& t,
                           const VariablePool& pool, std::size_t term_cap = 200000);
std::vector<Term> tree_exp(const Corpus& corpus, const std::set<std::string>& f, const std::vector<Term>& terms,
                           const VariablePool& pool, std::size_t term_cap = 200000);

struct MutationResult {
  std::vector<Suggestion> suggestions;
  bool exhausted = false;  // a cap cut the search short
  int iteration = 0;       // last iteration run
};

// Throws NonEquationalSource.
MutationResult tt_mutation(const Interpreter& interp, const AnalogyMapping& a, const std::set<std::string>& f,
                           const Theorem& sl, const Theorem& tt, const MutationOptions& options = {});

// Equal modulo variable renaming and argument order of + and *.
std::string canonical_key(const Conjecture& c);
// The same, ignoring hypotheses.
std::string equation_key(const Term& lhs, const Term& rhs);

struct SuggestOptions {
  int granularity = 3;
  Algorithm algorithm = Algorithm::KMeans;
  std::size_t runs = 200;
  double threshold = 0.6;
  std::uint64_t seed = 0;
  std::size_t mappings_per_pair = 8;
  MutationOptions mutation;
};

struct SuggestReport {
  std::vector<SourceTarget> pairs;
  std::vector<std::string> diagnostics;
  std::vector<Suggestion> suggestions;  // ranked
};

std::vector<Point> theorem_points(const Corpus& corpus, const Valuation& valuation);

// Stable theorem cluster of `target` over `runs` clusterings.
StableCluster theorem_cluster(const Corpus& corpus, const Valuation& valuation, std::size_t target,
                              const SuggestOptions& options);

std::vector<SourceTarget> source_pairs(const Corpus& corpus, const StableCluster& cluster, std::size_t target);

// Runs mutation for one pair, trying mappings in order until one yields.
MutationResult suggest_for_pair(const Interpreter& interp, const DefinitionClustering& defs,
                                const SourceTarget& pair, const SuggestOptions& options,
                                std::vector<std::string>* diagnostics = nullptr);

// Throws UnknownName when target is not a theorem.
SuggestReport suggest(const Corpus& corpus, const std::string& target, const SuggestOptions& options = {});
// The same over a valuation already built with options' seed.
SuggestReport suggest(const Corpus& corpus, const ValuationResult& valuation, const std::string& target,
                      const SuggestOptions& options = {});

bool rank_before(const Suggestion& a, const Suggestion& b);

}  // namespace acl2ml

#endif  // ACL2ML_ANALOGY_HPP_
