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

#include "acl2ml/cli.hpp"

#include <openssl/sha.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "acl2ml/analogy.hpp"
#include "acl2ml/corpus.hpp"
#include "acl2ml/errors.hpp"
#include "acl2ml/features.hpp"

namespace acl2ml {

using nlohmann::json;

namespace {

constexpr int kCacheVersion = 1;

std::string exact(const Rational& r) { return r.to_display(); }

// A run frequency as the exact fraction of runs it stands for.
std::string frequency_text(double f, std::size_t runs) {
  auto count = static_cast<std::int64_t>(std::llround(f * static_cast<double>(runs)));
  return Rational::fraction(count, static_cast<std::int64_t>(runs)).to_display();
}

std::string fixed(double d, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << d;
  return s.str();
}

Rational parse_rational(const json& j) {
  auto r = Rational::parse(j.get<std::string>());
  if (!r) throw UsageError("cache: bad rational " + j.dump());
  return *r;
}

std::optional<Provenance> parse_provenance(std::string_view s) {
  for (Provenance p : {Provenance::Builtin, Provenance::Recursive, Provenance::Clustered, Provenance::Declared}) {
    if (provenance_name(p) == s) return p;
  }
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string cache_slot(const ValuationOptions& o) {
  return "g" + std::to_string(o.granularity) + "-s" + std::to_string(o.seed);
}

json budget_json(const TestBudget& b) {
  return {{"bound", b.bound},
          {"max_list_length", b.max_list_length},
          {"random_tests", b.random_tests},
          {"fuel", b.fuel},
          {"max_exhaustive", b.max_exhaustive}};
}

json config_json(const Config& c) {
  json j = {{"granularity", c.granularity},
            {"algorithm", std::string(algorithm_name(c.algorithm))},
            {"runs", c.runs},
            {"threshold", Rational::fraction(std::llround(c.threshold * 1e6), 1000000).to_display()},
            {"seed", c.seed},
            {"budget", budget_json(c.budget)}};
  if (c.target) j["target"] = *c.target;
  return j;
}

json value_json(const SymbolValue& v) {
  json j = {{"value", exact(v.value)}, {"provenance", std::string(provenance_name(v.provenance))}};
  if (v.provenance == Provenance::Clustered) {
    j["cluster"] = v.cluster;
    j["proximity"] = exact(v.proximity);
  }
  return j;
}

json conjecture_json(const Conjecture& c) {
  json hyps = json::array();
  for (const auto& h : c.hypotheses) hyps.push_back(h.to_string());
  json vars = json::array();
  for (const auto& [name, sort] : c.variables) vars.push_back({{"name", name}, {"sort", std::string(sort_name(sort))}});
  return {{"statement", c.statement().to_string()},
          {"hypotheses", hyps},
          {"lhs", c.lhs.to_string()},
          {"rhs", c.rhs.to_string()},
          {"variables", vars}};
}

struct Session {
  Config config;
  std::filesystem::path corpus_path;
  Corpus corpus;

  // Symbol values always come from granularity-3 definition clusters;
  // cluster-defs shows the clusters at the requested granularity.
  ValuationResult valuation(int granularity = ValuationOptions{}.granularity) const {
    ValuationOptions o{granularity, config.seed};
    if (config.use_cache) {
      if (auto v = cache_load(corpus_path, corpus, o)) return std::move(*v);
    }
    ValuationResult v = build_valuation(corpus, o);
    if (config.use_cache) cache_store(corpus_path, corpus, o, v);
    return v;
  }

  std::size_t theorem_index(const std::string& name) const {
    for (std::size_t i = 0; i < corpus.theorems().size(); ++i) {
      if (corpus.theorems()[i].name == name) return i;
    }
    throw UnknownName(name);
  }
};

struct Outcome {
  json result;
  std::vector<std::string> diagnostics;
  ExitCode code = ExitCode::Results;
  std::string text;
};

json stable_json(const Corpus& corpus, const StableCluster& s, std::size_t runs) {
  json members = json::array();
  for (std::size_t m : s.members) {
    members.push_back({{"theorem", corpus.theorems()[m].name}, {"frequency", frequency_text(s.frequency.at(m), runs)}});
  }
  return {{"anchor", corpus.theorems()[s.anchor].name}, {"members", members}};
}

std::string stable_text(const Corpus& corpus, const StableCluster& s, std::size_t runs) {
  std::ostringstream o;
  o << "cluster of " << corpus.theorems()[s.anchor].name << ":\n";
  for (std::size_t m : s.members) {
    o << "  " << corpus.theorems()[m].name << "  " << frequency_text(s.frequency.at(m), runs) << "\n";
  }
  return o.str();
}

Outcome cluster_thms(const Session& s) {
  Outcome out;
  const auto& thms = s.corpus.theorems();
  std::optional<std::size_t> target;
  if (s.config.target) target = s.theorem_index(*s.config.target);
  out.result = {{"clusters", json::array()}};
  if (thms.empty()) return out;
  ValuationResult v = s.valuation();
  auto points = theorem_points(s.corpus, v.valuation);
  std::size_t n = num_clusters(points.size(), s.config.granularity);
  out.result["num_clusters"] = n;
  auto runs = run_many(s.config.algorithm, points, n, s.config.runs, s.config.seed);
  std::vector<std::size_t> anchors;
  if (target) {
    anchors.push_back(*target);
  } else {
    for (std::size_t i = 0; i < thms.size(); ++i) anchors.push_back(i);
  }
  for (std::size_t a : anchors) {
    StableCluster c = aggregate_runs(runs, a, s.config.threshold);
    out.result["clusters"].push_back(stable_json(s.corpus, c, s.config.runs));
    out.text += stable_text(s.corpus, c, s.config.runs);
  }
  return out;
}

Outcome cluster_defs(const Session& s) {
  Outcome out;
  ValuationResult v = s.valuation(s.config.granularity);
  const DefinitionClustering& d = v.definitions;
  json clusters = json::array();
  std::ostringstream text;
  for (const auto& c : d.clustering.clusters) {
    json members = json::array();
    text << "cluster " << c.index << ":\n";
    for (std::size_t m : c.members) {
      const SymbolValue* e = v.valuation.entry(d.names[m]);
      double dist = distance(d.points[m], c.centroid);
      members.push_back({{"definition", d.names[m]},
                         {"value", exact(e->value)},
                         {"proximity", exact(e->proximity)},
                         {"distance_to_centroid_approx", dist}});
      text << "  " << d.names[m] << "  value " << exact(e->value) << "  proximity " << exact(e->proximity)
           << "  distance ~" << fixed(dist) << "\n";
    }
    clusters.push_back({{"index", c.index}, {"members", members}});
  }
  json values = json::object();
  for (const auto& [name, sv] : v.valuation.entries()) values[name] = value_json(sv);
  out.result = {{"epoch", v.valuation.epoch()},
                {"num_clusters", d.clustering.clusters.size()},
                {"clusters", clusters},
                {"valuation", values}};
  text << "valuation:\n";
  for (const auto& [name, sv] : v.valuation.entries()) {
    text << "  " << name << " = " << exact(sv.value) << " (" << provenance_name(sv.provenance) << ")\n";
  }
  out.text = text.str();
  return out;
}

Outcome suggest_cmd(const Session& s) {
  Outcome out;
  if (!s.config.target) throw UsageError("suggest needs --target");
  s.theorem_index(*s.config.target);
  SuggestOptions o;
  o.granularity = s.config.granularity;
  o.algorithm = s.config.algorithm;
  o.runs = s.config.runs;
  o.threshold = s.config.threshold;
  o.seed = s.config.seed;
  o.mutation.budget = s.config.budget;
  o.mutation.budget.seed = s.config.seed;
  ValuationResult v = s.valuation();
  SuggestReport r = suggest(s.corpus, v, *s.config.target, o);

  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"source_theorem", p.st},
                     {"source_lemma", p.sl},
                     {"target", p.tt},
                     {"frequency", frequency_text(p.frequency, o.runs)}});
  }
  json sugg = json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < r.suggestions.size(); ++i) {
    const Suggestion& x = r.suggestions[i];
    json mapping = json::object();
    for (const auto& [from, to] : x.mapping.pairs) mapping[from] = to;
    sugg.push_back({{"rank", i + 1},
                    {"conjecture", conjecture_json(x.conjecture)},
                    {"verdict", std::string(verdict_name(x.verdict.kind))},
                    {"tests_run", x.verdict.tests_run},
                    {"iteration", x.iteration},
                    {"mapping", mapping},
                    {"mapping_score_approx", x.mapping.score},
                    {"source_theorem", x.source.st},
                    {"source_lemma", x.source.sl}});
    text << i + 1 << ". " << x.conjecture.statement().to_string() << "\n"
         << "   iteration " << x.iteration << ", " << verdict_name(x.verdict.kind) << " after " << x.verdict.tests_run
         << " tests, from " << x.source.sl << " via " << x.mapping.to_string() << "\n";
  }
  out.result = {{"pairs", pairs}, {"suggestions", sugg}};
  out.diagnostics = r.diagnostics;
  out.text = text.str();
  if (r.suggestions.empty()) {
    out.code = ExitCode::NoResults;
    out.text = "no suggestions\n";
  }
  return out;
}

Outcome features_cmd(const Session& s, const std::string& name) {
  Outcome out;
  ValuationResult v = s.valuation();
  Term t;
  std::map<std::string, Rational> overlay;
  std::string kind;
  if (const Theorem* thm = s.corpus.theorem(name)) {
    t = thm->statement;
    kind = "theorem";
  } else if (const Definition* d = s.corpus.definition(name)) {
    t = d->body;
    kind = "definition";
    if (d->recursive) overlay[d->name] = recursive_value(*d);
  } else {
    throw UnknownName(name);
  }
  TermMatrix m = extract_matrix(t, v.valuation, &overlay);
  json rows = json::array();
  std::ostringstream text;
  text << kind << " " << name << ": " << t.to_string() << "\n";
  text << "depth  " << std::setw(10) << "vars";
  for (int a = 0; a <= 5; ++a) text << std::setw(10) << ("arity" + std::to_string(a));
  text << "\n";
  for (std::size_t d = 0; d < kMatrixRows; ++d) {
    json row = json::array();
    text << std::setw(5) << d << "  ";
    for (std::size_t c = 0; c < kMatrixCols; ++c) {
      row.push_back(exact(m.at(d, c)));
      text << std::setw(10) << (m.at(d, c).is_zero() ? "." : exact(m.at(d, c)));
    }
    rows.push_back(row);
    text << "\n";
  }
  json vec = json::array();
  for (const auto& r : flatten(m)) vec.push_back(exact(r));
  out.result = {{"name", name},
                {"kind", kind},
                {"term", t.to_string()},
                {"columns", {"variables", "arity0", "arity1", "arity2", "arity3", "arity4", "arity5"}},
                {"matrix", rows},
                {"vector", vec},
                {"dropped_nodes", m.dropped},
                {"saturated_nodes", m.saturated}};
  out.text = text.str();
  return out;
}

Outcome eval_cmd(const Session& s, const std::string& expr) {
  Outcome out;
  Term t = s.corpus.parse_term(expr, true);
  try {
    Value v = eval(s.corpus, t, {}, s.config.budget.fuel);
    out.result = {{"expression", t.to_string()}, {"value", v.to_string()}};
    out.text = v.to_string() + "\n";
  } catch (const EvalError& e) {
    const char* kind = e.kind == EvalError::Kind::FuelExhausted    ? "FuelExhausted"
                       : e.kind == EvalError::Kind::DivisionByZero ? "DivisionByZero"
                                                                   : "SortError";
    out.result = {{"expression", t.to_string()}, {"error", kind}};
    out.diagnostics.push_back(std::string(kind) + ": " + e.what());
    out.code = ExitCode::Error;
    out.text = std::string(kind) + ": " + e.what() + "\n";
  }
  return out;
}

}  // namespace

void Config::validate() const {
  if (granularity < 1 || granularity > 5) {
    throw UsageError("--granularity must be between 1 and 5, got " + std::to_string(granularity));
  }
  if (runs == 0) throw UsageError("--runs must be positive");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw UsageError("--threshold must lie in (0, 1]");
  if (budget.fuel == 0) throw UsageError("--fuel must be positive");
  if (budget.bound == 0) throw UsageError("exhaustive bound must be positive");
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
  std::ostringstream s;
  for (unsigned char c : md) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
  return s.str();
}

json valuation_to_json(const ValuationResult& v) {
  json values = json::object();
  for (const auto& [name, sv] : v.valuation.entries()) {
    values[name] = {{"value", sv.value.to_string()},
                    {"provenance", std::string(provenance_name(sv.provenance))},
                    {"cluster", sv.cluster},
                    {"proximity", sv.proximity.to_string()}};
  }
  const Clustering& c = v.definitions.clustering;
  json clusters = json::array();
  for (const auto& k : c.clusters) clusters.push_back({{"members", k.members}, {"centroid", k.centroid}, {"index", k.index}});
  return {{"epoch", v.valuation.epoch()},
          {"values", values},
          {"definitions",
           {{"names", v.definitions.names},
            {"points", v.definitions.points},
            {"clustering",
             {{"clusters", clusters},
              {"assignment", c.assignment},
              {"algorithm", std::string(algorithm_name(c.algorithm))},
              {"seed", c.seed},
              {"degenerate", c.degenerate}}}}}};
}

ValuationResult valuation_from_json(const json& j) {
  try {
    ValuationResult v;
    for (const auto& [name, e] : j.at("values").items()) {
      SymbolValue sv;
      sv.value = parse_rational(e.at("value"));
      auto p = parse_provenance(e.at("provenance").get<std::string>());
      if (!p) throw UsageError("cache: bad provenance for " + name);
      sv.provenance = *p;
      sv.cluster = e.at("cluster").get<std::size_t>();
      sv.proximity = parse_rational(e.at("proximity"));
      v.valuation.set(name, std::move(sv));
    }
    v.valuation.set_epoch(j.at("epoch").get<std::size_t>());
    const json& d = j.at("definitions");
    v.definitions.names = d.at("names").get<std::vector<std::string>>();
    v.definitions.points = d.at("points").get<std::vector<std::vector<double>>>();
    const json& c = d.at("clustering");
    for (const auto& k : c.at("clusters")) {
      Cluster cl;
      cl.members = k.at("members").get<std::vector<std::size_t>>();
      cl.centroid = k.at("centroid").get<Point>();
      cl.index = k.at("index").get<std::size_t>();
      v.definitions.clustering.clusters.push_back(std::move(cl));
    }
    v.definitions.clustering.assignment = c.at("assignment").get<std::vector<std::size_t>>();
    auto a = parse_algorithm(c.at("algorithm").get<std::string>());
    if (!a) throw UsageError("cache: bad algorithm");
    v.definitions.clustering.algorithm = *a;
    v.definitions.clustering.seed = c.at("seed").get<std::uint64_t>();
    v.definitions.clustering.degenerate = c.at("degenerate").get<bool>();
    return v;
  } catch (const json::exception& e) {
    throw UsageError(std::string("cache: ") + e.what());
  }
}

std::filesystem::path cache_path(const std::filesystem::path& corpus) {
  return corpus.parent_path() / ".acl2ml-cache.json";
}

std::optional<ValuationResult> cache_load(const std::filesystem::path& corpus, const Corpus& c,
                                          const ValuationOptions& options) {
  std::ifstream in(cache_path(corpus));
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    if (j.value("version", 0) != kCacheVersion) return std::nullopt;
    if (j.value("digest", std::string()) != sha256_hex(c.normalized_text())) return std::nullopt;
    const json& entries = j.at("entries");
    auto it = entries.find(cache_slot(options));
    if (it == entries.end()) return std::nullopt;
    return valuation_from_json(*it);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void cache_store(const std::filesystem::path& corpus, const Corpus& c, const ValuationOptions& options,
                 const ValuationResult& v) {
  const std::string digest = sha256_hex(c.normalized_text());
  json j;
  {
    std::ifstream in(cache_path(corpus));
    if (in) {
      try {
        j = json::parse(in);
      } catch (const std::exception&) {
        j = json();
      }
    }
  }
  if (!j.is_object() || j.value("version", 0) != kCacheVersion || j.value("digest", std::string()) != digest) {
    j = {{"version", kCacheVersion}, {"digest", digest}, {"entries", json::object()}};
  }
  j["entries"][cache_slot(options)] = valuation_to_json(v);
  std::error_code ec;
  auto tmp = cache_path(corpus);
  tmp += ".tmp";
  {
    std::ofstream o(tmp);
    if (!o) return;
    o << j.dump() << "\n";
    if (!o) return;
  }
  std::filesystem::rename(tmp, cache_path(corpus), ec);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clustering and analogy-based lemma suggestion for a first-order Lisp"};
  app.require_subcommand(1);
  Config config;
  if (const char* env = std::getenv("ACL2ML_SEED")) {
    try {
      config.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: ACL2ML_SEED must be a non-negative integer, got '" << env << "'\n";
      return static_cast<int>(ExitCode::Error);
    }
  }
  std::string corpus_file;
  std::string subject;
  std::string algorithm = "kmeans";
  std::string format = "text";
  std::string target;
  std::string out_file;
  bool no_cache = false;
  std::size_t tests = config.budget.random_tests;
  std::uint64_t fuel = config.budget.fuel;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("corpus", corpus_file, "Corpus file")->required();
    sub->add_option("--target", target, "Theorem name");
    sub->add_option("--granularity", config.granularity, "Cluster granularity, 1..5");
    sub->add_option("--algorithm", algorithm, "kmeans or farthest-first");
    sub->add_option("--runs", config.runs, "Clustering runs");
    sub->add_option("--threshold", config.threshold, "Stable-cluster frequency threshold");
    sub->add_option("--seed", config.seed, "Root seed");
    sub->add_option("--tests", tests, "Random tests per conjecture");
    sub->add_option("--fuel", fuel, "Evaluation fuel");
    sub->add_option("--format", format, "json or text");
    sub->add_option("--out", out_file, "Write the report here");
    sub->add_flag("--no-cache", no_cache, "Ignore the valuation cache");
  };
  CLI::App* thms = app.add_subcommand("cluster-thms", "Stable theorem clusters");
  CLI::App* defs = app.add_subcommand("cluster-defs", "Definition clusters and the valuation");
  CLI::App* sug = app.add_subcommand("suggest", "Suggest lemmas for a theorem");
  CLI::App* feat = app.add_subcommand("features", "Feature matrix of a theorem or definition");
  CLI::App* ev = app.add_subcommand("eval", "Evaluate a ground expression");
  for (CLI::App* sub : {thms, defs, sug, feat, ev}) add_common(sub);
  feat->add_option("name", subject, "Theorem or definition")->required();
  ev->add_option("expr", subject, "Ground expression")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Error);
  }
  CLI::App* sub = app.get_subcommands().front();

  const auto start = std::chrono::steady_clock::now();
  try {
    auto alg = parse_algorithm(algorithm);
    if (!alg) throw UsageError("--algorithm must be kmeans or farthest-first, got '" + algorithm + "'");
    config.algorithm = *alg;
    if (format != "json" && format != "text") throw UsageError("--format must be json or text, got '" + format + "'");
    config.json = format == "json";
    config.budget.random_tests = tests;
    config.budget.fuel = fuel;
    if (!target.empty()) config.target = target;
    if (!out_file.empty()) config.out = out_file;
    config.use_cache = !no_cache;
    config.validate();

    Session s{config, corpus_file, parse_corpus(read_file(corpus_file))};
    Outcome o;
    std::string name = sub->get_name();
    if (sub == thms) {
      o = cluster_thms(s);
    } else if (sub == defs) {
      o = cluster_defs(s);
    } else if (sub == sug) {
      o = suggest_cmd(s);
    } else if (sub == feat) {
      o = features_cmd(s, subject);
    } else {
      o = eval_cmd(s, subject);
    }

    std::string report;
    if (config.json) {
      json j = {{"command", name}, {"corpus", corpus_file}, {"config", config_json(config)}, {"result", o.result},
                {"diagnostics", o.diagnostics}, {"exit_code", static_cast<int>(o.code)}};
      if (sub == feat || sub == ev) j["subject"] = subject;
      report = j.dump(2) + "\n";
    } else {
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report = o.text;
      for (const auto& d : o.diagnostics) report += "note: " + d + "\n";
      report += "(" + fixed(secs, 2) + " s)\n";
    }
    if (config.out) {
      std::ofstream f(*config.out);
      if (!f) throw UsageError("cannot write " + *config.out);
      f << report;
    } else {
      out << report;
    }
    return static_cast<int>(o.code);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Error);
  }
}

}  // namespace acl2ml
