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

#include "acl2ml/analogy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <random>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "acl2ml/builtins.hpp"
#include "acl2ml/errors.hpp"
#include "acl2ml/features.hpp"

namespace acl2ml {

namespace {

using Terms = std::vector<Term>;

void sort_unique(Terms& ts) {
  std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

std::set<std::string> symbols_of(const Term& t) {
  std::set<std::string> out;
  collect_functions(t, out);
  collect_constants(t, out);
  return out;
}

std::set<std::string> cone_symbols(const Corpus& corpus, const Theorem& thm) {
  std::set<std::string> out = symbols_of(thm.statement);
  std::set<std::string> defs = corpus.dependency_cone(thm.name);
  for (const auto& u : thm.uses) {
    const Theorem* lemma = corpus.theorem(u);
    if (!lemma) continue;
    out.merge(symbols_of(lemma->statement));
    defs.merge(corpus.dependency_cone(lemma->name));
  }
  for (const auto& d : defs) out.merge(symbols_of(corpus.definition(d)->body));
  return out;
}

std::set<std::string> intersect(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool fits(const Corpus& corpus, const std::string& fn, std::size_t j, const Term& arg,
          const std::map<std::string, Sort>& sorts) {
  return accepts(corpus.sorts().param(fn, j), corpus.sort_of(arg, sorts), arg.is_variable());
}

// Cartesian product over per-slot choices, calling emit for each full tuple
// until it returns false.
bool product(const std::vector<const Terms*>& slots, std::vector<Term>& cur,
             const std::function<bool(const std::vector<Term>&)>& emit) {
  if (cur.size() == slots.size()) return emit(cur);
  for (const Term& t : *slots[cur.size()]) {
    cur.push_back(t);
    bool go = product(slots, cur, emit);
    cur.pop_back();
    if (!go) return false;
  }
  return true;
}

// All ordered selections of k distinct indices from 0..n-1.
void selections(std::size_t n, std::size_t k, std::vector<std::size_t>& cur, std::vector<bool>& used,
                std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    cur.push_back(i);
    selections(n, k, cur, used, out);
    cur.pop_back();
    used[i] = false;
  }
}

std::vector<std::vector<std::size_t>> selections(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::vector<bool> used(n, false);
  selections(n, k, cur, used, out);
  return out;
}

std::size_t padding_needed(const Corpus& corpus, const AnalogyMapping& a, const Term& t) {
  if (!t.is_application()) return 0;
  std::size_t need = 0;
  auto m = corpus.arity(a(t.name()));
  if (m && *m > t.arity()) need += *m - t.arity();
  for (const auto& x : t.args()) need += padding_needed(corpus, a, x);
  return need;
}

std::optional<Sort> first_pad_sort(const Corpus& corpus, const AnalogyMapping& a, const Term& t) {
  if (!t.is_application()) return std::nullopt;
  const std::string& ft = a(t.name());
  auto m = corpus.arity(ft);
  if (m && *m > t.arity()) return corpus.sorts().param(ft, t.arity());
  for (const auto& x : t.args()) {
    if (auto s = first_pad_sort(corpus, a, x)) return s;
  }
  return std::nullopt;
}

struct TreeRec {
  const Corpus& corpus;
  const AnalogyMapping& a;
  const std::map<std::string, Sort>& sorts;
  std::vector<std::string> pad;
  std::size_t cap;

  Terms rec(const Term& t) {
    if (!t.is_application()) return {t};
    const std::string& ft = a(t.name());
    std::vector<Terms> args;
    for (const auto& x : t.args()) args.push_back(rec(x));
    std::size_t n = t.arity();
    std::size_t m = corpus.arity(ft).value_or(n);

    // Slot items: the source arguments, then padding variables.
    std::vector<Terms> items = args;
    std::vector<std::vector<std::size_t>> pad_sets;
    if (m > n) {
      std::size_t p = m - n;
      if (p > pad.size()) return {};
      // Unordered subsets of the padding supply; slot order comes later.
      std::vector<bool> pick(pad.size(), false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(p), true);
      do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < pad.size(); ++i) {
          if (pick[i]) s.push_back(i);
        }
        pad_sets.push_back(s);
      } while (std::prev_permutation(pick.begin(), pick.end()));
    } else {
      pad_sets.push_back({});
    }

    Terms out;
    for (const auto& ps : pad_sets) {
      std::vector<Terms> slots_items = items;
      for (std::size_t i : ps) slots_items.push_back({Term::variable(pad[i])});
      for (const auto& sel : selections(slots_items.size(), m)) {
        std::vector<const Terms*> slots;
        for (std::size_t i : sel) slots.push_back(&slots_items[i]);
        std::vector<Term> cur;
        product(slots, cur, [&](const std::vector<Term>& xs) {
          for (std::size_t j = 0; j < xs.size(); ++j) {
            if (!fits(corpus, ft, j, xs[j], sorts)) return true;
          }
          out.push_back(Term::apply(ft, xs));
          return out.size() < cap;
        });
        if (out.size() >= cap) break;
      }
      if (out.size() >= cap) break;
    }
    sort_unique(out);
    return out;
  }
};

}  // namespace

const std::string& AnalogyMapping::operator()(const std::string& symbol) const {
  auto it = pairs.find(symbol);
  return it == pairs.end() ? symbol : it->second;
}

std::string AnalogyMapping::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [from, to] : pairs) {
    if (!first) s += ", ";
    first = false;
    s += from + " -> " + to;
  }
  return s + "}";
}

std::set<std::string> shared_symbols(const Corpus& corpus, const Theorem& st, const Theorem& tt) {
  if (st.name == tt.name) {
    std::set<std::string> all = symbols_of(st.statement);
    for (const auto& s : cone_symbols(corpus, st)) {
      if (corpus.is_background(s)) all.insert(s);
    }
    return all;
  }
  std::set<std::string> both = intersect(symbols_of(st.statement), symbols_of(tt.statement));
  both.merge(intersect(cone_symbols(corpus, st), cone_symbols(corpus, tt)));
  std::set<std::string> out;
  for (const auto& s : both) {
    if (corpus.is_background(s)) out.insert(s);
  }
  return out;
}

std::set<std::string> target_symbols(const Corpus& corpus, const Theorem& tt) {
  std::set<std::string> out;
  for (const auto& d : corpus.dependency_cone(tt.name)) {
    if (!corpus.is_background(d)) out.insert(d);
  }
  return out;
}

std::map<std::string, std::string> align_symbols(const Corpus& corpus, const Theorem& st, const Theorem& tt) {
  std::map<std::string, std::string> out;
  std::vector<std::pair<std::string, std::string>> work;
  std::function<void(const Term&, const Term&)> walk = [&](const Term& x, const Term& y) {
    if (!x.is_application() || !y.is_application()) return;
    bool ux = !corpus.is_background(x.name());
    bool uy = !corpus.is_background(y.name());
    if (ux && uy) {
      if (out.emplace(x.name(), y.name()).second) work.emplace_back(x.name(), y.name());
    } else if (x.name() != y.name()) {
      return;
    }
    for (std::size_t i = 0; i < std::min(x.arity(), y.arity()); ++i) walk(x.arg(i), y.arg(i));
  };
  walk(st.statement, tt.statement);
  while (!work.empty()) {
    auto [f, g] = work.back();
    work.pop_back();
    const Definition* df = corpus.definition(f);
    const Definition* dg = corpus.definition(g);
    if (df && dg) walk(df->body, dg->body);
  }
  return out;
}

std::vector<AnalogyMapping> analogy_maps(const Corpus& corpus, const Theorem& st, const Theorem& sl,
                                         const Theorem& tt, const DefinitionClustering& defs,
                                         const std::set<std::string>& shared, std::size_t cap) {
  std::set<std::string> sources;
  for (const Term* t : {&st.statement, &sl.statement}) {
    std::set<std::string> fns;
    collect_functions(*t, fns);
    for (const auto& f : fns) {
      if (!corpus.is_background(f) && !shared.count(f)) sources.insert(f);
    }
  }
  std::set<std::string> targets = target_symbols(corpus, tt);
  auto aligned = align_symbols(corpus, st, tt);

  double diameter = 0;
  for (const auto& p : defs.points) {
    for (const auto& q : defs.points) diameter = std::max(diameter, distance(p, q));
  }
  auto closeness = [&](const std::string& s, const std::string& t) {
    if (s == t) return 1.0;
    auto i = defs.position(s);
    auto j = defs.position(t);
    if (!i || !j) return 0.0;
    if (diameter == 0) return 1.0;
    return std::clamp(1.0 - distance(defs.points[*i], defs.points[*j]) / diameter, 0.0, 1.0);
  };

  struct Choice {
    std::string to;
    double proximity;
    bool aligned;
  };
  std::vector<std::string> order(sources.begin(), sources.end());
  std::vector<std::vector<Choice>> choices;
  for (const auto& s : order) {
    std::vector<Choice> cs;
    auto al = aligned.find(s);
    auto si = defs.position(s);
    for (const auto& t : targets) {
      auto ti = defs.position(t);
      bool same = si && ti && defs.clustering.assignment[*si] == defs.clustering.assignment[*ti];
      bool is_aligned = al != aligned.end() && al->second == t;
      if (same || is_aligned) cs.push_back({t, closeness(s, t), is_aligned});
    }
    if (cs.empty()) throw NoMapping(s);
    std::sort(cs.begin(), cs.end(), [](const Choice& x, const Choice& y) {
      if (x.aligned != y.aligned) return x.aligned;
      if (x.proximity != y.proximity) return x.proximity > y.proximity;
      return x.to < y.to;
    });
    choices.push_back(std::move(cs));
  }

  std::vector<AnalogyMapping> out;
  std::vector<std::size_t> pick(order.size(), 0);
  constexpr std::size_t kEnumerationLimit = 100000;
  for (std::size_t count = 0; count < kEnumerationLimit; ++count) {
    AnalogyMapping m;
    m.shared = shared;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Choice& c = choices[i][pick[i]];
      if (c.to != order[i]) m.pairs[order[i]] = c.to;
      m.score *= c.proximity;
      if (c.aligned) ++m.aligned;
    }
    out.push_back(std::move(m));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const AnalogyMapping& x, const AnalogyMapping& y) {
    if (x.aligned != y.aligned) return x.aligned > y.aligned;
    if (x.score != y.score) return x.score > y.score;
    return x.pairs < y.pairs;
  });
  if (out.size() > cap) out.resize(cap);
  return out;
}

VariablePool make_pool(const Corpus& corpus, const AnalogyMapping& a, const Theorem& sl) {
  VariablePool pool;
  auto sorts = corpus.variable_sorts(sl);
  pool.names = variables_of(sl.statement);
  for (const auto& v : pool.names) pool.sorts[v] = sorts.at(v);
  std::size_t fresh = 0;
  std::optional<Sort> pad_sort;
  if (sl.is_equation()) {
    const Term& lhs = sl.conclusion.arg(0);
    const Term& rhs = sl.conclusion.arg(1);
    fresh = std::max(padding_needed(corpus, a, lhs), padding_needed(corpus, a, rhs));
    pad_sort = first_pad_sort(corpus, a, lhs);
    if (!pad_sort) pad_sort = first_pad_sort(corpus, a, rhs);
  }
  std::string base = pool.names.empty() ? "x" : pool.names.front();
  std::set<std::string> taken(pool.names.begin(), pool.names.end());
  for (std::size_t k = 1; fresh > 0; ++k) {
    std::string name = base + std::to_string(k);
    if (taken.count(name)) continue;
    pool.names.push_back(name);
    pool.sorts[name] = pad_sort.value_or(Sort::Any);
    --fresh;
  }
  return pool;
}

std::vector<Term> tree_rec(const Corpus& corpus, const AnalogyMapping& a, const Term& t, const VariablePool& pool,
                           std::size_t term_cap) {
  std::vector<std::string> vars = variables_of(t);
  Terms out;
  if (vars.size() > pool.names.size()) return out;
  // Distinct source variables go to distinct pool variables; the rest of
  // the pool pads arity gaps.
  for (const auto& sel : selections(pool.names.size(), vars.size())) {
    std::map<std::string, std::string> sigma;
    std::vector<bool> used(pool.names.size(), false);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      sigma[vars[i]] = pool.names[sel[i]];
      used[sel[i]] = true;
    }
    TreeRec r{corpus, a, pool.sorts, {}, term_cap};
    for (std::size_t i = 0; i < pool.names.size(); ++i) {
      if (!used[i]) r.pad.push_back(pool.names[i]);
    }
    for (auto& x : r.rec(rename_variables(t, sigma))) {
      out.push_back(std::move(x));
      if (out.size() >= term_cap) break;
    }
    if (out.size() >= term_cap) break;
  }
  sort_unique(out);
  return out;
}

namespace {

std::optional<Term> constant_term(const std::string& s) {
  if (s == "t") return Term::boolean(true);
  if (s == "nil") return Term::boolean(false);
  if (auto r = Rational::parse(s)) return Term::constant(*r);
  return std::nullopt;
}

struct Vocabulary {
  std::vector<std::string> functions;
  Terms constants;
};

Vocabulary vocabulary(const Corpus& corpus, const std::set<std::string>& f) {
  Vocabulary v;
  for (const auto& s : f) {
    if (auto c = constant_term(s)) {
      v.constants.push_back(*c);
    } else if (auto m = corpus.arity(s); m && *m > 0) {
      v.functions.push_back(s);
    }
  }
  return v;
}

// Every sort-correct application of fn over the given argument choices.
void applications(const Corpus& corpus, const std::string& fn, const std::vector<const Terms*>& slots,
                  const std::map<std::string, Sort>& sorts, std::size_t cap, Terms& out) {
  std::vector<Term> cur;
  product(slots, cur, [&](const std::vector<Term>& xs) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (!fits(corpus, fn, j, xs[j], sorts)) return true;
    }
    out.push_back(Term::apply(fn, xs));
    return out.size() < cap;
  });
}

struct NodeExp {
  const Corpus& corpus;
  const Vocabulary& voc;
  const std::map<std::string, Sort>& sorts;
  Terms leaves;
  std::size_t cap;

  Terms rec(const Term& t) {
    if (t.is_variable()) {
      Terms out{t};
      Sort sv = sorts.count(t.name()) ? sorts.at(t.name()) : Sort::Any;
      for (const auto& fn : voc.functions) {
        if (!accepts(sv, corpus.sorts().result(fn), false)) continue;
        std::vector<const Terms*> slots(*corpus.arity(fn), &leaves);
        applications(corpus, fn, slots, sorts, cap, out);
      }
      return out;
    }
    if (t.is_constant()) {
      bool in_f = std::find(voc.constants.begin(), voc.constants.end(), t) != voc.constants.end();
      if (!in_f) return {t};
      Terms out;
      Sort sc = corpus.sort_of(t, {});
      for (const auto& c : voc.constants) {
        if (corpus.sort_of(c, {}) == sc) out.push_back(c);
      }
      return out;
    }
    std::vector<Terms> args;
    for (const auto& x : t.args()) args.push_back(rec(x));
    std::vector<const Terms*> slots;
    for (const auto& a : args) slots.push_back(&a);
    Terms out;
    applications(corpus, t.name(), slots, sorts, cap, out);
    return out;
  }
};

}  // namespace

std::vector<Term> node_exp(const Corpus& corpus, const std::set<std::string>& f, const Term& t,
                           const VariablePool& pool, std::size_t term_cap) {
  Vocabulary voc = vocabulary(corpus, f);
  NodeExp n{corpus, voc, pool.sorts, voc.constants, term_cap};
  for (const auto& v : pool.names) n.leaves.push_back(Term::variable(v));
  Terms out = n.rec(t);
  out.push_back(t);
  sort_unique(out);
  return out;
}

std::vector<Term> tree_exp(const Corpus& corpus, const std::set<std::string>& f, const std::vector<Term>& terms,
                           const VariablePool& pool, std::size_t term_cap) {
  Vocabulary voc = vocabulary(corpus, f);
  Terms out;
  for (const auto& fn : voc.functions) {
    std::vector<const Terms*> slots(*corpus.arity(fn), &terms);
    applications(corpus, fn, slots, pool.sorts, term_cap, out);
    if (out.size() >= term_cap) break;
  }
  sort_unique(out);
  return out;
}

namespace {

using Fp = std::vector<std::optional<Value>>;
using FullFp = std::vector<Value>;

struct FullFpHash {
  std::size_t operator()(const FullFp& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& x : v) h = (h ^ x.hash()) * 0x100000001b3ULL;
    return h;
  }
};

std::optional<FullFp> full(const Fp& f) {
  FullFp out;
  for (const auto& x : f) {
    if (!x) return std::nullopt;
    out.push_back(*x);
  }
  return out;
}

bool agree(const Fp& a, const Fp& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] && b[k] && !(*a[k] == *b[k])) return false;
  }
  return true;
}

std::uint64_t fnv(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

// Fixed assignments satisfying one hypothesis rung, with one memo each so
// that shared subterms are evaluated once per assignment.
class Sampler {
 public:
  Sampler(const Interpreter& interp, const std::vector<std::string>& names, const std::vector<Term>& hyps,
          const std::map<std::string, Sort>& sorts, std::size_t count, const TestBudget& budget,
          std::uint64_t seed)
      : interp_(interp), names_(names), fuel_(budget.fuel) {
    std::vector<std::vector<Value>> pools;
    for (std::size_t i = 0; i < names.size(); ++i) {
      pools.push_back(gen_values(sorts.at(names[i]), budget.bound, derive_seed(seed, i), budget.max_list_length));
    }
    std::vector<std::shared_ptr<const Interpreter::Program>> progs;
    for (const auto& h : hyps) progs.push_back(interp.compile(h, names));
    std::mt19937_64 rng(derive_seed(seed, 0x5a));
    for (std::size_t attempt = 0; attempt < 200 * count && samples_.size() < count; ++attempt) {
      std::vector<Value> vals;
      for (const auto& p : pools) vals.push_back(p[std::uniform_int_distribution<std::size_t>(0, p.size() - 1)(rng)]);
      EvalContext ctx(fuel_);
      bool ok = true;
      try {
        for (const auto& h : progs) {
          ctx.fuel = fuel_;
          if (!interp.run(*h, vals, ctx).truthy()) {
            ok = false;
            break;
          }
        }
      } catch (const Error&) {
        ok = false;
      }
      if (ok) samples_.push_back(std::move(vals));
    }
    ctxs_.assign(samples_.size(), EvalContext(fuel_));
  }

  std::size_t size() const { return samples_.size(); }

  const Fp& fingerprint(const Term& t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    auto prog = interp_.compile(t, names_);
    Fp f(samples_.size());
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      try {
        ctxs_[k].fuel = fuel_;
        ctxs_[k].depth = 0;
        f[k] = interp_.run(*prog, samples_[k], ctxs_[k]);
      } catch (const Error&) {
      }
    }
    return cache_.emplace(t, std::move(f)).first->second;
  }

  // fn applied pointwise to argument fingerprints.
  Fp apply(const std::string& fn, const std::vector<const Fp*>& args) {
    Fp f(samples_.size());
    std::vector<Value> xs(args.size());
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      bool ok = true;
      for (std::size_t j = 0; j < args.size(); ++j) {
        if (!(*args[j])[k]) {
          ok = false;
          break;
        }
        xs[j] = *(*args[j])[k];
      }
      if (!ok) continue;
      try {
        ctxs_[k].fuel = fuel_;
        ctxs_[k].depth = 0;
        f[k] = interp_.apply(fn, xs, ctxs_[k]);
      } catch (const Error&) {
      }
    }
    return f;
  }

 private:
  const Interpreter& interp_;
  std::vector<std::string> names_;
  std::uint64_t fuel_;
  std::vector<std::vector<Value>> samples_;
  std::vector<EvalContext> ctxs_;
  std::unordered_map<Term, Fp, TermHash> cache_;
};

enum class Inverse { None, Plus, Minus, Times };

Inverse inverse_of(const Corpus& corpus, const std::string& fn) {
  if (const BuiltinInfo* b = find_builtin(fn)) {
    if (b->op == BuiltinOp::Plus) return Inverse::Plus;
    if (b->op == BuiltinOp::Times) return Inverse::Times;
    return Inverse::None;
  }
  if (fn == "-" && corpus.is_prelude(fn)) return Inverse::Minus;
  return Inverse::None;
}

// Indexes of complete fingerprints restricted to the assignments a mask keeps.
using MaskedIndex = std::map<std::vector<bool>, std::unordered_map<FullFp, std::vector<std::size_t>, FullFpHash>>;

FullFp restrict(const FullFp& f, const std::vector<bool>& keep) {
  FullFp out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (keep[k]) out.push_back(f[k]);
  }
  return out;
}

// Indices of the y with fn(x, y) = l at every assignment, or nullopt when the
// operator cannot be inverted here. Assignments where x is 0 leave y free
// under multiplication.
std::optional<std::vector<std::size_t>> solve_masked(Inverse op, const FullFp& l, const FullFp& x, const Terms& ts,
                                                     const std::vector<std::optional<FullFp>>& tfull,
                                                     MaskedIndex& masked) {
  FullFp y;
  std::vector<bool> keep(l.size(), true);
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (!l[k].is_number() || !x[k].is_number()) return std::nullopt;
    const Rational& a = l[k].num();
    const Rational& b = x[k].num();
    switch (op) {
      case Inverse::Plus: y.push_back(Value::number(a - b)); break;
      case Inverse::Minus: y.push_back(Value::number(b - a)); break;
      case Inverse::Times:
        if (b.is_zero()) {
          if (!a.is_zero()) return std::vector<std::size_t>{};
          keep[k] = false;
          y.push_back(Value::nil());
        } else {
          y.push_back(Value::number(a / b));
        }
        break;
      case Inverse::None: return std::nullopt;
    }
  }
  auto [slot, fresh] = masked.try_emplace(keep);
  if (fresh) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (tfull[j]) slot->second[restrict(*tfull[j], keep)].push_back(j);
    }
  }
  auto it = slot->second.find(restrict(y, keep));
  if (it == slot->second.end()) return std::vector<std::size_t>{};
  return it->second;
}

struct Mutator {
  const Interpreter& interp;
  const Corpus& corpus;
  const AnalogyMapping& a;
  const Theorem& sl;
  const Theorem& tt;
  const MutationOptions& opt;
  VariablePool pool;
  Vocabulary voc;
  std::map<std::string, Sort> sorts;  // conjecture variable sorts
  std::vector<std::set<std::string>> rungs;
  std::vector<std::unique_ptr<Sampler>> samplers;
  std::string tt_key;
  MutationResult result;
  std::size_t generic_budget = 400000;

  Mutator(const Interpreter& i, const AnalogyMapping& am, const std::set<std::string>& f, const Theorem& s,
          const Theorem& t, const MutationOptions& o)
      : interp(i), corpus(i.corpus()), a(am), sl(s), tt(t), opt(o) {
    pool = make_pool(corpus, a, sl);
    voc = vocabulary(corpus, f);
    auto tt_sorts = corpus.variable_sorts(tt);
    for (const auto& v : pool.names) {
      auto it = tt_sorts.find(v);
      sorts[v] = it != tt_sorts.end() && it->second != Sort::Any ? it->second : pool.sorts.at(v);
    }
    rungs.push_back({});
    std::set<std::string> all;
    for (const auto& v : pool.names) {
      if (sorts[v] != Sort::Nat) continue;
      rungs.push_back({v});
      all.insert(v);
    }
    if (all.size() > 1) rungs.push_back(all);
    samplers.resize(rungs.size());
    if (tt.is_equation()) {
      Conjecture tc{tt.hypotheses, tt.conclusion.arg(0), tt.conclusion.arg(1), {}};
      tt_key = canonical_key(tc);
    }
  }

  std::vector<Term> hypotheses(const std::vector<std::string>& vars, const std::set<std::string>& strong) const {
    std::vector<Term> hyps;
    for (const auto& v : vars) {
      auto r = recognizer_for(sorts.at(v));
      if (!r) continue;
      hyps.push_back(Term::apply(*r, {Term::variable(v)}));
      if (strong.count(v)) hyps.push_back(Term::apply("not", {Term::apply("zp", {Term::variable(v)})}));
    }
    return hyps;
  }

  Sampler& sampler(std::size_t r) {
    if (!samplers[r]) {
      auto hyps = hypotheses(pool.names, rungs[r]);
      samplers[r] = std::make_unique<Sampler>(interp, pool.names, hyps, sorts, opt.samples, opt.budget,
                                              derive_seed(opt.budget.seed, 1000 + r));
    }
    return *samplers[r];
  }

  bool rhs_fits(const Term& lhs, const Term& rhs) const {
    return accepts(corpus.sort_of(lhs, sorts), corpus.sort_of(rhs, sorts), rhs.is_variable());
  }

  Conjecture conjecture(const Term& lhs, const Term& rhs, const std::set<std::string>& strong) const {
    std::vector<std::string> vars = variables_of(lhs);
    for (const auto& v : variables_of(rhs)) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    Conjecture c;
    c.lhs = lhs;
    c.rhs = rhs;
    c.hypotheses = hypotheses(vars, strong);
    for (const auto& v : vars) c.variables.emplace_back(v, sorts.at(v));
    return c;
  }

  // Full checks of fingerprint matches; survivors become suggestions.
  std::vector<Suggestion> confirm(const std::vector<std::pair<Term, Term>>& matches, std::size_t r, int iteration) {
    std::vector<Conjecture> cs;
    std::set<std::string> seen;
    constexpr std::size_t kMaxChecks = 2000;
    for (const auto& [l, rh] : matches) {
      if (l == rh || !rhs_fits(l, rh)) continue;
      Conjecture c = conjecture(l, rh, rungs[r]);
      std::string key = canonical_key(c);
      if (key == tt_key || !seen.insert(key).second) continue;
      if (cs.size() >= kMaxChecks) {
        result.exhausted = true;
        break;
      }
      cs.push_back(std::move(c));
    }
    std::vector<Verdict> verdicts(cs.size());
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cs.size()));
    auto work = [&](std::size_t begin, std::size_t step) {
      for (std::size_t i = begin; i < cs.size(); i += step) {
        TestBudget b = opt.budget;
        b.seed = derive_seed(opt.budget.seed, fnv(cs[i].to_string()));
        verdicts[i] = check_conjecture(interp, cs[i], b);
      }
    };
    if (threads <= 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool_threads;
      for (unsigned t = 0; t < threads; ++t) pool_threads.emplace_back(work, t, threads);
      for (auto& th : pool_threads) th.join();
    }
    std::vector<Suggestion> out;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!verdicts[i].survived()) continue;
      Suggestion s;
      s.size = cs[i].lhs.size() + cs[i].rhs.size();
      s.conjecture = std::move(cs[i]);
      s.verdict = verdicts[i];
      s.iteration = iteration;
      s.mapping = a;
      out.push_back(std::move(s));
    }
    return out;
  }

  // Pairs whose sides agree on every sample of rung r.
  std::vector<std::pair<Term, Term>> join(const Terms& ls, const Terms& rs, std::size_t r) {
    Sampler& s = sampler(r);
    std::unordered_map<FullFp, std::vector<std::size_t>, FullFpHash> index;
    std::vector<std::size_t> partial;
    for (std::size_t j = 0; j < rs.size(); ++j) {
      if (auto f = full(s.fingerprint(rs[j]))) {
        index[*f].push_back(j);
      } else {
        partial.push_back(j);
      }
    }
    std::vector<std::pair<Term, Term>> out;
    for (const auto& l : ls) {
      const Fp& fl = s.fingerprint(l);
      if (auto f = full(fl)) {
        auto it = index.find(*f);
        if (it != index.end()) {
          for (std::size_t j : it->second) out.emplace_back(l, rs[j]);
        }
        for (std::size_t j : partial) {
          if (agree(fl, s.fingerprint(rs[j]))) out.emplace_back(l, rs[j]);
        }
      } else {
        for (const auto& rh : rs) {
          if (agree(fl, s.fingerprint(rh))) out.emplace_back(l, rh);
        }
      }
    }
    return out;
  }

  // Top-level applications over ts that agree with some lhs, without
  // materializing the whole product.
  std::vector<std::pair<Term, Term>> guided(const Terms& ls, const Terms& ts, std::size_t r) {
    Sampler& s = sampler(r);
    std::unordered_map<FullFp, std::vector<std::size_t>, FullFpHash> lindex, tindex;
    std::vector<std::size_t> lpartial;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (auto f = full(s.fingerprint(ls[i]))) {
        lindex[*f].push_back(i);
      } else {
        lpartial.push_back(i);
      }
    }
    std::vector<std::optional<FullFp>> tfull(ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j) {
      tfull[j] = full(s.fingerprint(ts[j]));
      if (tfull[j]) tindex[*tfull[j]].push_back(j);
    }
    MaskedIndex masked;
    std::vector<std::pair<Term, Term>> out;
    std::size_t spent = 0;
    auto emit = [&](const std::string& fn, const std::vector<Term>& args, const Fp& f) {
      std::vector<std::size_t> hits;
      if (auto ff = full(f)) {
        auto it = lindex.find(*ff);
        if (it != lindex.end()) hits = it->second;
      }
      for (std::size_t i = 0; i < ls.size(); ++i) {
        bool is_partial = std::find(lpartial.begin(), lpartial.end(), i) != lpartial.end();
        bool f_partial = !full(f);
        if ((is_partial || f_partial) && agree(s.fingerprint(ls[i]), f)) hits.push_back(i);
      }
      if (hits.empty()) return;
      for (std::size_t j = 0; j < args.size(); ++j) {
        if (!fits(corpus, fn, j, args[j], sorts)) return;
      }
      Term t = Term::apply(fn, args);
      for (std::size_t i : hits) out.emplace_back(ls[i], t);
    };

    for (const auto& fn : voc.functions) {
      bool wanted = false;
      for (const auto& l : ls) wanted = wanted || accepts(corpus.sort_of(l, sorts), corpus.sorts().result(fn), false);
      if (!wanted) continue;
      std::size_t m = *corpus.arity(fn);
      if (m == 1) {
        for (const auto& x : ts) emit(fn, {x}, s.apply(fn, {&s.fingerprint(x)}));
        continue;
      }
      if (m == 2) {
        Inverse op = inverse_of(corpus, fn);
        for (std::size_t xi = 0; xi < ts.size(); ++xi) {
          const Fp& fx = s.fingerprint(ts[xi]);
          bool solved = op != Inverse::None && tfull[xi] && lpartial.empty() && !lindex.empty();
          std::set<std::size_t> ys;
          for (const auto& [lf, lis] : lindex) {
            if (!solved) break;
            auto y = solve_masked(op, lf, *tfull[xi], ts, tfull, masked);
            if (!y) {
              solved = false;
              break;
            }
            ys.insert(y->begin(), y->end());
          }
          if (solved) {
            for (std::size_t yi : ys) emit(fn, {ts[xi], ts[yi]}, s.apply(fn, {&fx, &s.fingerprint(ts[yi])}));
          }
          for (std::size_t yi = 0; yi < ts.size(); ++yi) {
            if (solved && tfull[yi]) continue;
            if (++spent > generic_budget) {
              result.exhausted = true;
              break;
            }
            emit(fn, {ts[xi], ts[yi]}, s.apply(fn, {&fx, &s.fingerprint(ts[yi])}));
          }
        }
        continue;
      }
      // Wider symbols: bounded generic enumeration.
      std::vector<const Terms*> slots(m, &ts);
      std::vector<Term> cur;
      product(slots, cur, [&](const std::vector<Term>& xs) {
        if (++spent > generic_budget) {
          result.exhausted = true;
          return false;
        }
        std::vector<const Fp*> fs;
        for (const auto& x : xs) fs.push_back(&s.fingerprint(x));
        emit(fn, xs, s.apply(fn, fs));
        return true;
      });
    }
    return out;
  }

  // Keeps the smallest right-hand sides that fit the pair cap.
  Terms prune(Terms rs, std::size_t lcount) {
    std::size_t limit = std::max<std::size_t>(1, opt.pair_cap / std::max<std::size_t>(1, lcount));
    if (rs.size() > limit) {
      rs.resize(limit);
      result.exhausted = true;
    }
    return rs;
  }

  // Each candidate is tried under the plain hypotheses first and, only if
  // falsified there, under the strengthened rungs.
  std::vector<Suggestion> attempt(int iteration, const Terms& ls, const Terms& rs, bool top_level) {
    result.iteration = iteration;
    std::vector<Suggestion> found;
    std::set<std::string> done;
    for (std::size_t r = 0; r < rungs.size(); ++r) {
      if (sampler(r).size() == 0) continue;
      auto matches = top_level ? guided(ls, rs, r) : join(ls, rs, r);
      std::erase_if(matches, [&](const auto& m) { return done.count(equation_key(m.first, m.second)) > 0; });
      for (auto& s : confirm(matches, r, iteration)) {
        done.insert(equation_key(s.conjecture.lhs, s.conjecture.rhs));
        found.push_back(std::move(s));
      }
    }
    return found;
  }

  MutationResult run() {
    const Term& tl = sl.conclusion.arg(0);
    const Term& tr = sl.conclusion.arg(1);
    Terms l1 = tree_rec(corpus, a, tl, pool, opt.term_cap);
    Terms r1 = tree_rec(corpus, a, tr, pool, opt.term_cap);
    if (l1.size() > opt.pair_cap) {
      l1.resize(opt.pair_cap);
      result.exhausted = true;
    }
    r1 = prune(r1, l1.size());
    std::vector<Suggestion> found = attempt(1, l1, r1, false);
    if (found.empty()) {
      // Leaf growth on the right-hand side only.
      Terms r2 = r1;
      std::set<std::string> f;
      for (const auto& fn : voc.functions) f.insert(fn);
      for (const auto& c : voc.constants) f.insert(c.to_string());
      for (const auto& t : r1) {
        for (auto& x : node_exp(corpus, f, t, pool, opt.term_cap)) r2.push_back(std::move(x));
        if (r2.size() >= opt.term_cap) {
          result.exhausted = true;
          break;
        }
      }
      sort_unique(r2);
      r2 = prune(r2, l1.size());
      found = attempt(2, l1, r2, false);
      if (found.empty()) found = attempt(3, l1, r2, true);
    }
    std::sort(found.begin(), found.end(), rank_before);
    std::set<std::string> keys;
    for (auto& s : found) {
      if (keys.insert(equation_key(s.conjecture.lhs, s.conjecture.rhs)).second) {
        result.suggestions.push_back(std::move(s));
      }
    }
    return std::move(result);
  }
};

Term canonical_term(const Term& t) {
  if (!t.is_application()) return t;
  std::vector<Term> args;
  for (const auto& x : t.args()) args.push_back(canonical_term(x));
  if (const BuiltinInfo* b = find_builtin(t.name());
      b && (b->op == BuiltinOp::Plus || b->op == BuiltinOp::Times)) {
    std::sort(args.begin(), args.end(),
              [](const Term& x, const Term& y) { return x.to_string() < y.to_string(); });
  }
  return Term::apply(t.name(), args);
}

}  // namespace

std::string canonical_key(const Conjecture& c) {
  std::vector<std::string> vars = variables_of(c.lhs);
  for (const auto& t : {c.rhs}) {
    for (const auto& v : variables_of(t)) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  for (const auto& h : c.hypotheses) {
    for (const auto& v : variables_of(h)) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  std::vector<std::size_t> perm(vars.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool first = true;
  std::size_t tries = 0;
  do {
    std::map<std::string, std::string> ren;
    for (std::size_t i = 0; i < vars.size(); ++i) ren[vars[i]] = "v" + std::to_string(perm[i]);
    std::string l = canonical_term(rename_variables(c.lhs, ren)).to_string();
    std::string r = canonical_term(rename_variables(c.rhs, ren)).to_string();
    if (r < l) std::swap(l, r);
    std::vector<std::string> hs;
    for (const auto& h : c.hypotheses) hs.push_back(canonical_term(rename_variables(h, ren)).to_string());
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    std::string key;
    for (const auto& h : hs) key += h + " ";
    key += "| " + l + " = " + r;
    if (first || key < best) best = key;
    first = false;
  } while (++tries < 720 && std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string equation_key(const Term& lhs, const Term& rhs) { return canonical_key(Conjecture{{}, lhs, rhs, {}}); }

bool rank_before(const Suggestion& a, const Suggestion& b) {
  if (a.iteration != b.iteration) return a.iteration < b.iteration;
  if (a.size != b.size) return a.size < b.size;
  if (a.mapping.score != b.mapping.score) return a.mapping.score > b.mapping.score;
  if (a.conjecture.hypotheses.size() != b.conjecture.hypotheses.size()) {
    return a.conjecture.hypotheses.size() < b.conjecture.hypotheses.size();
  }
  return a.conjecture.to_string() < b.conjecture.to_string();
}

MutationResult tt_mutation(const Interpreter& interp, const AnalogyMapping& a, const std::set<std::string>& f,
                           const Theorem& sl, const Theorem& tt, const MutationOptions& options) {
  if (!sl.is_equation()) throw NonEquationalSource(sl.name);
  Mutator m(interp, a, f, sl, tt, options);
  return m.run();
}

std::vector<Point> theorem_points(const Corpus& corpus, const Valuation& valuation) {
  std::vector<Point> out;
  for (const auto& t : corpus.theorems()) out.push_back(to_point(flatten(extract_matrix(t.statement, valuation))));
  return out;
}

StableCluster theorem_cluster(const Corpus& corpus, const Valuation& valuation, std::size_t target,
                              const SuggestOptions& options) {
  auto points = theorem_points(corpus, valuation);
  std::size_t n = num_clusters(points.size(), options.granularity);
  auto runs = run_many(options.algorithm, points, n, options.runs, options.seed);
  return aggregate_runs(runs, target, options.threshold);
}

std::vector<SourceTarget> source_pairs(const Corpus& corpus, const StableCluster& cluster, std::size_t target) {
  std::vector<std::size_t> members;
  for (std::size_t m : cluster.members) {
    if (m != target) members.push_back(m);
  }
  std::stable_sort(members.begin(), members.end(), [&](std::size_t x, std::size_t y) {
    return cluster.frequency.at(x) > cluster.frequency.at(y);
  });
  std::vector<SourceTarget> out;
  const Theorem& tt = corpus.theorems()[target];
  for (std::size_t m : members) {
    const Theorem& st = corpus.theorems()[m];
    for (const auto& u : st.uses) out.push_back({st.name, u, tt.name, cluster.frequency.at(m)});
  }
  return out;
}

MutationResult suggest_for_pair(const Interpreter& interp, const DefinitionClustering& defs,
                                const SourceTarget& pair, const SuggestOptions& options,
                                std::vector<std::string>* diagnostics) {
  const Corpus& corpus = interp.corpus();
  const Theorem* st = corpus.theorem(pair.st);
  const Theorem* sl = corpus.theorem(pair.sl);
  const Theorem* tt = corpus.theorem(pair.tt);
  if (!st || !sl || !tt) throw UnknownName(!st ? pair.st : !sl ? pair.sl : pair.tt);
  auto note = [&](const std::string& m) {
    if (diagnostics) diagnostics->push_back(pair.st + "/" + pair.sl + ": " + m);
  };
  MutationResult last;
  std::set<std::string> shared = shared_symbols(corpus, *st, *tt);
  std::vector<AnalogyMapping> maps;
  try {
    maps = analogy_maps(corpus, *st, *sl, *tt, defs, shared);
  } catch (const NoMapping& e) {
    note(e.what());
    return last;
  }
  std::size_t tried = std::min(options.mappings_per_pair, maps.size());
  for (std::size_t i = 0; i < tried; ++i) {
    try {
      last = tt_mutation(interp, maps[i], shared, *sl, *tt, options.mutation);
    } catch (const NonEquationalSource& e) {
      note(e.what());
      return {};
    }
    if (!last.suggestions.empty()) {
      for (auto& s : last.suggestions) s.source = pair;
      return last;
    }
  }
  note("no surviving candidate under " + std::to_string(tried) + " mapping(s)");
  return last;
}

SuggestReport suggest(const Corpus& corpus, const std::string& target, const SuggestOptions& options) {
  if (!corpus.theorem(target)) throw UnknownName(target);
  return suggest(corpus, build_valuation(corpus, {ValuationOptions{}.granularity, options.seed}), target, options);
}

SuggestReport suggest(const Corpus& corpus, const ValuationResult& v, const std::string& target,
                      const SuggestOptions& options) {
  const Theorem* tt = corpus.theorem(target);
  if (!tt) throw UnknownName(target);
  std::size_t ti = 0;
  while (corpus.theorems()[ti].name != target) ++ti;

  SuggestReport report;
  StableCluster cluster = theorem_cluster(corpus, v.valuation, ti, options);
  report.pairs = source_pairs(corpus, cluster, ti);
  if (report.pairs.empty()) {
    report.diagnostics.push_back("no source lemmas in cluster");
    return report;
  }
  Interpreter interp(corpus);
  std::vector<Suggestion> all;
  for (const auto& p : report.pairs) {
    auto r = suggest_for_pair(interp, v.definitions, p, options, &report.diagnostics);
    if (r.exhausted) report.diagnostics.push_back(p.st + "/" + p.sl + ": search caps reached");
    for (auto& s : r.suggestions) all.push_back(std::move(s));
  }
  std::stable_sort(all.begin(), all.end(), rank_before);
  std::set<std::string> keys;
  for (auto& s : all) {
    if (keys.insert(equation_key(s.conjecture.lhs, s.conjecture.rhs)).second) {
      report.suggestions.push_back(std::move(s));
    }
  }
  return report;
}

}  // namespace acl2ml
