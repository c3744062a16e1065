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

#include "acl2ml/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "acl2ml/builtins.hpp"
#include "acl2ml/errors.hpp"
#include "acl2ml/sexpr.hpp"

namespace acl2ml {

namespace {

constexpr std::string_view kPrelude = R"((defun not (p) (if p nil t))
(defun implies (p q) (if p (if q t nil) t))
(defun and (p q) (if p q nil))
(defun or (p q) (if p p q))
(defun - (x y) (+ x (unary-- y)))
(defun / (x y) (* x (unary-/ y)))
(defun zp (x) (if (integerp x) (not (< 0 x)) t))
(defun natp (x) (if (integerp x) (not (< x 0)) nil))
(defun true-listp (x) (if (consp x) (true-listp (cdr x)) (equal x nil)))
(defun nat-listp (x) (if (consp x) (and (natp (car x)) (nat-listp (cdr x))) (equal x nil)))
(defun len (x) (if (consp x) (+ 1 (len (cdr x))) 0))
(defun app (x y) (if (consp x) (cons (car x) (app (cdr x) y)) y))
(defun rev (x) (if (consp x) (app (rev (cdr x)) (cons (car x) nil)) nil))
)";

bool numeric(Sort s) { return s == Sort::Nat || s == Sort::Int || s == Sort::Rational; }

std::optional<Sort> join_opt(std::optional<Sort> a, std::optional<Sort> b) {
  if (!a) return b;
  if (!b) return a;
  return join(*a, *b);
}

bool looks_numeric(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

void flatten_and(const Term& t, std::vector<Term>& out) {
  if (t.is_application() && t.name() == "and" && t.arity() == 2) {
    flatten_and(t.arg(0), out);
    flatten_and(t.arg(1), out);
  } else {
    out.push_back(t);
  }
}

// Every atom of a form; decides which prelude definitions a text touches.
void collect_atoms(const SExpr& e, std::set<std::string>& out) {
  if (e.is_atom()) {
    out.insert(e.atom);
    return;
  }
  for (const auto& item : e.items) collect_atoms(item, out);
}

bool is_nested_cdr_of(const Term& t, const std::string& param) {
  if (!t.is_application() || t.name() != "cdr") return false;
  const Term& inner = t.arg(0);
  if (inner.is_variable()) return inner.name() == param;
  return is_nested_cdr_of(inner, param);
}

bool is_decrement_of(const Term& t, const std::string& param) {
  if (!t.is_application() || t.name() != "-" || t.arity() != 2) return false;
  if (!t.arg(0).is_variable() || t.arg(0).name() != param) return false;
  if (!t.arg(1).is_constant()) return false;
  const auto* k = std::get_if<Rational>(&t.arg(1).literal());
  return k && k->is_integer() && k->sign() > 0;
}

void recursive_calls(const Term& t, const std::string& fn, std::vector<Term>& out) {
  if (!t.is_application()) return;
  if (t.name() == fn) out.push_back(t);
  for (const auto& a : t.args()) recursive_calls(a, fn, out);
}

}  // namespace

// ---------------------------------------------------------------------------
// Sorts

std::string_view sort_name(Sort s) {
  switch (s) {
    case Sort::Nat: return "nat";
    case Sort::Int: return "int";
    case Sort::Rational: return "rational";
    case Sort::Bool: return "bool";
    case Sort::List: return "list";
    case Sort::Any: return "any";
  }
  return "any";
}

std::optional<Sort> parse_sort(std::string_view s) {
  for (Sort x : {Sort::Nat, Sort::Int, Sort::Rational, Sort::Bool, Sort::List, Sort::Any}) {
    if (sort_name(x) == s) return x;
  }
  return std::nullopt;
}

Sort join(Sort a, Sort b) {
  if (a == b) return a;
  if (numeric(a) && numeric(b)) return std::max(a, b);
  return Sort::Any;
}

bool accepts(Sort expected, Sort actual, bool actual_is_variable) {
  if (expected == Sort::Any) return true;
  if (actual == Sort::Any) return actual_is_variable;
  if (numeric(expected)) return numeric(actual);
  return expected == actual;
}

std::optional<Sort> recognizer_sort(std::string_view fn) {
  if (fn == "natp") return Sort::Nat;
  if (fn == "integerp") return Sort::Int;
  if (fn == "rationalp" || fn == "acl2-numberp") return Sort::Rational;
  if (fn == "true-listp" || fn == "nat-listp") return Sort::List;
  return std::nullopt;
}

std::optional<std::string> recognizer_for(Sort s) {
  switch (s) {
    case Sort::Nat: return "natp";
    case Sort::Int: return "integerp";
    case Sort::Rational: return "rationalp";
    case Sort::List: return "true-listp";
    default: return std::nullopt;
  }
}

Sort SortTable::param(const std::string& fn, std::size_t i) const {
  auto it = params_.find({fn, i});
  return it == params_.end() ? Sort::Any : it->second;
}

Sort SortTable::result(const std::string& fn) const {
  auto it = results_.find(fn);
  return it == results_.end() ? Sort::Any : it->second;
}

void SortTable::set_param(const std::string& fn, std::size_t i, Sort s) { params_[{fn, i}] = s; }
void SortTable::set_result(const std::string& fn, Sort s) { results_[fn] = s; }

std::string_view measure_name(MeasureScheme m) {
  switch (m) {
    case MeasureScheme::NatValue: return "nat-value";
    case MeasureScheme::ListLen: return "list-length";
    case MeasureScheme::Unknown: return "unknown";
  }
  return "unknown";
}

bool Theorem::is_equation() const {
  return conclusion.is_application() && conclusion.name() == "equal" && conclusion.arity() == 2;
}

// ---------------------------------------------------------------------------
// Builder

class CorpusBuilder {
 public:
  enum class VarPolicy { Free, Params, Ground };

  struct Scope {
    VarPolicy policy = VarPolicy::Free;
    const std::vector<std::string>* params = nullptr;
    std::string self;  // function currently being defined
    std::size_t self_arity = 0;
    std::string site;
  };

  explicit CorpusBuilder(Corpus& c) : c_(c) {}

  std::optional<std::size_t> arity_of(const std::string& fn, const Scope& scope) const {
    if (!scope.self.empty() && fn == scope.self) return scope.self_arity;
    return c_.arity(fn);
  }

  Term term(const SExpr& e, const Scope& scope) const {
    if (e.is_atom()) return atom(e, scope);
    if (e.items.empty()) return Term::boolean(false);
    const SExpr& head = e.items.front();
    if (head.is_list) throw SyntaxError("application head must be a symbol", head.line, head.col);
    std::string fn = head.atom;
    if (looks_numeric(fn) || fn == "t" || fn == "nil" || fn.front() == ':') {
      throw SyntaxError("'" + fn + "' cannot be applied", head.line, head.col);
    }
    if (const BuiltinInfo* b = find_builtin(fn)) fn = std::string(b->name);

    std::vector<Term> args;
    args.reserve(e.items.size() - 1);
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term(e.items[i], scope));

    if ((fn == "and" || fn == "or") && args.size() != 2 && arity_of(fn, scope) == 2u) {
      if (args.empty()) return Term::boolean(fn == "and");
      if (args.size() == 1) return args.front();
      Term acc = args.back();
      for (std::size_t i = args.size() - 1; i-- > 0;) acc = Term::apply(fn, {args[i], acc});
      return acc;
    }
    if (fn == "-" && args.size() == 1) return Term::apply("unary--", std::move(args));
    if (fn == "/" && args.size() == 1) return Term::apply("unary-/", std::move(args));

    auto arity = arity_of(fn, scope);
    if (!arity) throw UndefinedSymbol(fn, scope.site);
    if (*arity != args.size()) throw ArityMismatch(fn, *arity, args.size());
    return Term::apply(std::move(fn), std::move(args));
  }

  Term atom(const SExpr& e, const Scope& scope) const {
    const std::string& a = e.atom;
    if (a == "t") return Term::boolean(true);
    if (a == "nil") return Term::boolean(false);
    if (looks_numeric(a)) {
      auto r = Rational::parse(a);
      if (!r) throw SyntaxError("malformed number '" + a + "'", e.line, e.col);
      return Term::constant(*r);
    }
    if (a.front() == ':') throw SyntaxError("unexpected keyword '" + a + "'", e.line, e.col);
    switch (scope.policy) {
      case VarPolicy::Ground:
        throw UndefinedSymbol(a, scope.site);
      case VarPolicy::Params:
        if (std::find(scope.params->begin(), scope.params->end(), a) == scope.params->end()) {
          throw UndefinedSymbol(a, scope.site);
        }
        break;
      case VarPolicy::Free:
        break;
    }
    return Term::variable(a);
  }

  void check_new_name(const std::string& name) const {
    if (find_builtin(name) || c_.def_index_.count(name) || c_.thm_index_.count(name) ||
        c_.declared_index_.count(name)) {
      throw DuplicateName(name);
    }
  }

  static void check_identifier(const SExpr& e, std::string_view what) {
    if (e.is_list || e.atom.empty() || looks_numeric(e.atom) || e.atom == "t" || e.atom == "nil" ||
        e.atom.front() == ':') {
      throw SyntaxError(std::string("expected ") + std::string(what), e.line, e.col);
    }
  }

  Definition defun(const SExpr& form, bool prelude) const {
    if (form.items.size() < 4) throw SyntaxError("defun needs a name, parameters and a body", form.line, form.col);
    check_identifier(form.items[1], "function name");
    Definition d;
    d.name = form.items[1].atom;
    d.prelude = prelude;
    check_new_name(d.name);
    const SExpr& ps = form.items[2];
    if (!ps.is_list) throw SyntaxError("parameter list expected", ps.line, ps.col);
    for (const auto& p : ps.items) {
      check_identifier(p, "parameter name");
      if (std::find(d.params.begin(), d.params.end(), p.atom) != d.params.end()) {
        throw DuplicateName(p.atom);
      }
      d.params.push_back(p.atom);
    }
    // Skip (declare ...) forms between parameters and body.
    std::size_t body_at = 3;
    while (body_at + 1 < form.items.size() && form.items[body_at].is_list &&
           !form.items[body_at].items.empty() && form.items[body_at].items[0].is_atom("declare")) {
      ++body_at;
    }
    if (body_at + 1 != form.items.size()) {
      throw SyntaxError("defun takes exactly one body", form.line, form.col);
    }
    Scope scope;
    scope.policy = VarPolicy::Params;
    scope.params = &d.params;
    scope.self = d.name;
    scope.self_arity = d.params.size();
    scope.site = "defun " + d.name;
    d.body = term(form.items[body_at], scope);
    d.recursive = mentions_function(d.body, d.name);
    d.measure = d.recursive ? infer_measure(d) : MeasureScheme::Unknown;
    return d;
  }

  Theorem defthm(const SExpr& form) const {
    if (form.items.size() < 3) throw SyntaxError("defthm needs a name and a statement", form.line, form.col);
    check_identifier(form.items[1], "theorem name");
    Theorem t;
    t.name = form.items[1].atom;
    check_new_name(t.name);
    Scope scope;
    scope.site = "defthm " + t.name;
    t.statement = term(form.items[2], scope);
    for (std::size_t i = 3; i < form.items.size(); i += 2) {
      const SExpr& key = form.items[i];
      if (!key.is_atom(":uses")) {
        throw SyntaxError("unsupported defthm option", key.line, key.col);
      }
      if (i + 1 >= form.items.size() || !form.items[i + 1].is_list) {
        throw SyntaxError(":uses expects a list of theorem names", key.line, key.col);
      }
      for (const auto& u : form.items[i + 1].items) {
        check_identifier(u, "theorem name");
        if (!c_.thm_index_.count(u.atom)) throw UndefinedSymbol(u.atom, ":uses of " + t.name);
        t.uses.push_back(u.atom);
      }
    }
    if (t.statement.is_application() && t.statement.name() == "implies" && t.statement.arity() == 2) {
      flatten_and(t.statement.arg(0), t.hypotheses);
      t.conclusion = t.statement.arg(1);
    } else {
      t.conclusion = t.statement;
    }
    return t;
  }

  void declare_sort(const SExpr& form) {
    if (form.items.size() != 4 || !form.items[2].is_list) {
      throw SyntaxError("expected (declare-sort name (sorts...) sort)", form.line, form.col);
    }
    check_identifier(form.items[1], "function name");
    const std::string& name = form.items[1].atom;
    if (find_builtin(name)) throw DuplicateName(name);
    auto arity = c_.arity(name);
    if (!arity) throw UndefinedSymbol(name, "declare-sort");
    auto one = [](const SExpr& e) {
      auto s = e.is_atom() ? parse_sort(e.atom) : std::nullopt;
      if (!s) throw SyntaxError("unknown sort", e.line, e.col);
      return *s;
    };
    SortDeclaration decl;
    for (const auto& s : form.items[2].items) decl.params.push_back(one(s));
    if (decl.params.size() != *arity) throw ArityMismatch(name, *arity, decl.params.size());
    decl.result = one(form.items[3]);
    c_.sort_decls_[name] = decl;
  }

  void declare_builtin(const SExpr& form) {
    if (form.items.size() != 4) {
      throw SyntaxError("expected (declare-builtin name arity value)", form.line, form.col);
    }
    check_identifier(form.items[1], "symbol name");
    DeclaredBuiltin b;
    b.name = form.items[1].atom;
    check_new_name(b.name);
    const SExpr& ar = form.items[2];
    auto arity = ar.is_atom() ? Rational::parse(ar.atom) : std::nullopt;
    if (!arity || !arity->is_integer() || arity->sign() < 0) {
      throw SyntaxError("arity must be a non-negative integer", ar.line, ar.col);
    }
    b.arity = static_cast<std::size_t>(*arity->to_int64());
    const SExpr& v = form.items[3];
    auto value = v.is_atom() ? Rational::parse(v.atom, true) : std::nullopt;
    if (!value) throw SyntaxError("value must be a number", v.line, v.col);
    b.value = *value;
    c_.declared_index_[b.name] = c_.declared_.size();
    c_.declared_.push_back(std::move(b));
  }

  void add_definition(Definition d, bool user) {
    d.index = next_index_++;
    c_.def_index_[d.name] = c_.definitions_.size();
    if (user) c_.items_.push_back({true, c_.definitions_.size()});
    c_.definitions_.push_back(std::move(d));
  }

  void add_theorem(Theorem t) {
    t.index = next_index_++;
    c_.thm_index_[t.name] = c_.theorems_.size();
    c_.items_.push_back({false, c_.theorems_.size()});
    c_.theorems_.push_back(std::move(t));
  }

  void build(std::string_view text) {
    std::vector<SExpr> forms = read_all(text);
    std::vector<SExpr> prelude = read_all(kPrelude);

    std::set<std::string> user_defined;
    std::set<std::string> mentioned;
    for (const auto& f : forms) {
      if (!f.is_list || f.items.empty() || !f.items[0].is_atom()) {
        throw SyntaxError("expected a top-level form", f.line, f.col);
      }
      if ((f.items[0].is_atom("defun") || f.items[0].is_atom("declare-builtin")) && f.items.size() > 1 &&
          f.items[1].is_atom()) {
        user_defined.insert(f.items[1].atom);
      }
      collect_atoms(f, mentioned);
    }

    // Prelude definitions shadowed by the user, and those built on them, are
    // dropped. The rest are loaded if the text reaches them, dormant otherwise.
    std::vector<std::set<std::string>> deps(prelude.size());
    std::vector<bool> dropped(prelude.size(), false);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < prelude.size(); ++i) {
      const std::string& name = prelude[i].items[1].atom;
      pos[name] = i;
      collect_atoms(prelude[i].items[3], deps[i]);
      dropped[i] = user_defined.count(name) > 0;
      for (const auto& d : deps[i]) {
        auto it = pos.find(d);
        if (it != pos.end() && it->second != i && dropped[it->second]) dropped[i] = true;
      }
    }
    std::vector<bool> reached(prelude.size(), false);
    std::function<void(std::size_t)> reach = [&](std::size_t i) {
      if (reached[i] || dropped[i]) return;
      reached[i] = true;
      for (const auto& d : deps[i]) {
        auto it = pos.find(d);
        if (it != pos.end()) reach(it->second);
      }
    };
    for (const auto& m : mentioned) {
      auto it = pos.find(m);
      if (it != pos.end() && !user_defined.count(m)) reach(it->second);
    }

    for (std::size_t i = 0; i < prelude.size(); ++i) {
      if (dropped[i]) continue;
      Definition d = defun(prelude[i], true);
      if (reached[i]) {
        add_definition(std::move(d), false);
      } else {
        c_.dormant_index_[d.name] = c_.dormant_.size();
        c_.dormant_.push_back(std::move(d));
      }
    }

    for (const auto& f : forms) {
      const std::string& head = f.items[0].atom;
      if (head == "defun") {
        add_definition(defun(f, false), true);
      } else if (head == "defthm") {
        add_theorem(defthm(f));
      } else if (head == "declare-sort") {
        declare_sort(f);
      } else if (head == "declare-builtin") {
        declare_builtin(f);
      } else {
        throw SyntaxError("unsupported top-level form '" + head + "'", f.line, f.col);
      }
    }
  }

 private:
  Corpus& c_;
  std::size_t next_index_ = 0;
};

// ---------------------------------------------------------------------------
// Corpus queries

const Definition* Corpus::definition(std::string_view name) const {
  if (auto it = def_index_.find(name); it != def_index_.end()) return &definitions_[it->second];
  if (auto it = dormant_index_.find(name); it != dormant_index_.end()) return &dormant_[it->second];
  return nullptr;
}

const Theorem* Corpus::theorem(std::string_view name) const {
  auto it = thm_index_.find(name);
  return it == thm_index_.end() ? nullptr : &theorems_[it->second];
}

std::optional<std::size_t> Corpus::arity(std::string_view fn) const {
  if (const BuiltinInfo* b = find_builtin(fn)) return b->arity;
  if (const Definition* d = definition(fn)) return d->params.size();
  auto dt = declared_index_.find(fn);
  if (dt != declared_index_.end()) return declared_[dt->second].arity;
  return std::nullopt;
}

bool Corpus::is_builtin(std::string_view fn) const { return find_builtin(fn) != nullptr; }

bool Corpus::is_declared_builtin(std::string_view fn) const { return declared_index_.count(fn) > 0; }

bool Corpus::is_prelude(std::string_view fn) const {
  const Definition* d = definition(fn);
  return d && d->prelude;
}

bool Corpus::is_background(std::string_view symbol) const {
  if (is_builtin(symbol) || is_declared_builtin(symbol) || is_prelude(symbol)) return true;
  return symbol == "t" || symbol == "nil" || looks_numeric(symbol);
}

std::map<std::string, Sort> Corpus::variable_sorts(const Theorem& thm) const {
  std::map<std::string, Sort> out;
  for (const auto& h : thm.hypotheses) {
    if (!h.is_application() || h.arity() != 1 || !h.arg(0).is_variable()) continue;
    auto s = recognizer_sort(h.name());
    if (!s) continue;
    auto [it, fresh] = out.emplace(h.arg(0).name(), *s);
    // Two recognizers on one variable: keep the narrower numeric one.
    if (!fresh && numeric(it->second) && numeric(*s)) it->second = std::min(it->second, *s);
  }
  for (const auto& v : variables_of(thm.statement)) out.emplace(v, Sort::Any);
  return out;
}

namespace {

std::optional<Sort> literal_sort(const Literal& lit) {
  if (const auto* b = std::get_if<bool>(&lit)) {
    if (!*b) return std::nullopt;  // nil is both false and the empty list
    return Sort::Bool;
  }
  const Rational& r = std::get<Rational>(lit);
  if (!r.is_integer()) return Sort::Rational;
  return r.sign() < 0 ? Sort::Int : Sort::Nat;
}

// nullopt stands for "no information" (nil, or a call being defined).
std::optional<Sort> sort_opt(const Term& t, const SortTable& table,
                             const std::map<std::string, Sort>& vars, const std::string& self) {
  switch (t.kind()) {
    case TermKind::Variable: {
      auto it = vars.find(t.name());
      return it == vars.end() ? Sort::Any : it->second;
    }
    case TermKind::Constant:
      return literal_sort(t.literal());
    case TermKind::Application:
      if (t.name() == self) return std::nullopt;
      if (t.name() == "if") {
        return join_opt(sort_opt(t.arg(1), table, vars, self), sort_opt(t.arg(2), table, vars, self));
      }
      return table.result(t.name());
  }
  return Sort::Any;
}

void set_builtin_sorts(SortTable& st) {
  using S = Sort;
  auto sig = [&](const std::string& fn, std::vector<S> ps, S r) {
    for (std::size_t i = 0; i < ps.size(); ++i) st.set_param(fn, i, ps[i]);
    st.set_result(fn, r);
  };
  for (const auto& b : builtin_table()) {
    if (b.group == BuiltinGroup::Recogniser) sig(std::string(b.name), {S::Any}, S::Bool);
  }
  sig("cons", {S::Any, S::List}, S::List);
  sig("complex", {S::Rational, S::Rational}, S::Rational);
  sig("car", {S::List}, S::Any);
  sig("cdr", {S::List}, S::List);
  sig("denominator", {S::Rational}, S::Nat);
  sig("numerator", {S::Rational}, S::Int);
  sig("realpart", {S::Rational}, S::Rational);
  sig("imagpart", {S::Rational}, S::Rational);
  sig("unary-/", {S::Rational}, S::Rational);
  sig("unary--", {S::Rational}, S::Rational);
  sig("+", {S::Rational, S::Rational}, S::Rational);
  sig("*", {S::Rational, S::Rational}, S::Rational);
  sig("equal", {S::Any, S::Any}, S::Bool);
  sig("if", {S::Any, S::Any, S::Any}, S::Any);
  sig("<", {S::Rational, S::Rational}, S::Bool);
}

// Sorts a variable is used at as a direct argument, per the table so far.
void use_evidence(const Term& t, const std::string& var, const SortTable& table, const std::string& self,
                  std::optional<Sort>& acc) {
  if (!t.is_application()) return;
  if (t.name() != self && t.name() != "if") {
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (t.arg(i).is_variable() && t.arg(i).name() == var) {
        Sort s = table.param(t.name(), i);
        if (s != Sort::Any) acc = join_opt(acc, s);
      }
    }
  }
  for (const auto& a : t.args()) use_evidence(a, var, table, self, acc);
}

void theorem_evidence(const Term& t, const std::map<std::string, Sort>& vars, const Corpus& corpus,
                      std::map<std::pair<std::string, std::size_t>, Sort>& out) {
  if (!t.is_application()) return;
  if (corpus.definition(t.name())) {
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (!t.arg(i).is_variable()) continue;
      auto it = vars.find(t.arg(i).name());
      if (it == vars.end() || it->second == Sort::Any) continue;
      auto [slot, fresh] = out.emplace(std::make_pair(t.name(), i), it->second);
      if (!fresh) slot->second = join(slot->second, it->second);
    }
  }
  for (const auto& a : t.args()) theorem_evidence(a, vars, corpus, out);
}

std::string normalize_text(std::string_view text) {
  std::string out;
  std::string line;
  auto flush = [&] {
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.pop_back();
    out += line;
    out += '\n';
    line.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
    } else {
      line += c;
    }
  }
  if (!line.empty()) flush();
  while (out.size() >= 2 && out[out.size() - 1] == '\n' && out[out.size() - 2] == '\n') out.pop_back();
  if (out == "\n") out.clear();
  return out;
}

}  // namespace

Sort Corpus::sort_of(const Term& t, const std::map<std::string, Sort>& vars) const {
  if (t.is_constant() && std::holds_alternative<bool>(t.literal())) return Sort::Bool;
  return sort_opt(t, sorts_, vars, "").value_or(Sort::Any);
}

SortTable infer_sorts(const Corpus& corpus) {
  SortTable st;
  set_builtin_sorts(st);

  // Sorts that theorems' recognizer hypotheses impose on definition arguments.
  std::map<std::pair<std::string, std::size_t>, Sort> evidence;
  for (const auto& thm : corpus.theorems()) {
    auto vars = corpus.variable_sorts(thm);
    theorem_evidence(thm.conclusion, vars, corpus, evidence);
    for (const auto& h : thm.hypotheses) {
      bool recognizer = h.is_application() && h.arity() == 1 && h.arg(0).is_variable() &&
                        recognizer_sort(h.name()).has_value();
      if (!recognizer) theorem_evidence(h, vars, corpus, evidence);
    }
  }

  auto infer = [&](const Definition& d) {
    auto decl = corpus.sort_declarations().find(d.name);
    if (decl != corpus.sort_declarations().end()) {
      for (std::size_t i = 0; i < d.params.size(); ++i) st.set_param(d.name, i, decl->second.params[i]);
      st.set_result(d.name, decl->second.result);
      return;
    }
    std::map<std::string, Sort> vars;
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      Sort s = Sort::Any;
      auto ev = evidence.find({d.name, i});
      if (ev != evidence.end()) {
        s = ev->second;
      } else {
        std::optional<Sort> acc;
        use_evidence(d.body, d.params[i], st, d.name, acc);
        if (acc) s = *acc;
      }
      st.set_param(d.name, i, s);
      vars[d.params[i]] = s;
    }
    st.set_result(d.name, sort_opt(d.body, st, vars, d.name).value_or(Sort::Any));
  };
  // Dormant prelude only depends on itself and the builtins.
  for (const auto& d : corpus.dormant_definitions()) infer(d);
  for (const auto& d : corpus.definitions()) infer(d);
  for (const auto& b : corpus.declared_builtins()) {
    auto decl = corpus.sort_declarations().find(b.name);
    if (decl == corpus.sort_declarations().end()) continue;
    for (std::size_t i = 0; i < b.arity; ++i) st.set_param(b.name, i, decl->second.params[i]);
    st.set_result(b.name, decl->second.result);
  }
  return st;
}

MeasureScheme infer_measure(const Definition& def) {
  if (!def.recursive) throw UsageError("infer_measure: '" + def.name + "' is not recursive");
  std::vector<Term> calls;
  recursive_calls(def.body, def.name, calls);
  for (std::size_t i = 0; i < def.params.size(); ++i) {
    bool all = std::all_of(calls.begin(), calls.end(),
                           [&](const Term& c) { return is_decrement_of(c.arg(i), def.params[i]); });
    if (all) return MeasureScheme::NatValue;
  }
  for (std::size_t i = 0; i < def.params.size(); ++i) {
    bool all = std::all_of(calls.begin(), calls.end(),
                           [&](const Term& c) { return is_nested_cdr_of(c.arg(i), def.params[i]); });
    if (all) return MeasureScheme::ListLen;
  }
  return MeasureScheme::Unknown;
}

std::set<std::string> Corpus::dependency_cone(const std::string& name) const {
  std::set<std::string> cone;
  std::vector<std::string> work;
  auto visit = [&](const Term& t) {
    std::set<std::string> fns;
    collect_functions(t, fns);
    for (const auto& f : fns) {
      if (definition(f) && cone.insert(f).second) work.push_back(f);
    }
  };
  if (const Theorem* t = theorem(name)) {
    visit(t->statement);
  } else if (definition(name)) {
    cone.insert(name);
    work.push_back(name);
  } else {
    throw UnknownName(name);
  }
  while (!work.empty()) {
    std::string f = work.back();
    work.pop_back();
    visit(definition(f)->body);
  }
  return cone;
}

Term Corpus::parse_term(std::string_view text, bool ground) const {
  CorpusBuilder b(const_cast<Corpus&>(*this));
  CorpusBuilder::Scope scope;
  scope.policy = ground ? CorpusBuilder::VarPolicy::Ground : CorpusBuilder::VarPolicy::Free;
  scope.site = "expression";
  return b.term(read_one(text), scope);
}

Corpus parse_corpus(std::string_view text) {
  Corpus c;
  CorpusBuilder b(c);
  b.build(text);
  c.sorts_ = infer_sorts(c);
  c.normalized_text_ = normalize_text(text);
  return c;
}

Term parse_term(std::string_view text) {
  static const Corpus prelude_only = parse_corpus("");
  return prelude_only.parse_term(text);
}

std::string_view prelude_text() { return kPrelude; }

}  // namespace acl2ml
