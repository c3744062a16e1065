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

#include "acl2ml/interp.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "acl2ml/builtins.hpp"
#include "acl2ml/errors.hpp"

namespace acl2ml {

namespace {

constexpr std::size_t kMaxDepth = 4000;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

[[noreturn]] void sort_error(const std::string& what) {
  throw EvalError(EvalError::Kind::SortError, what);
}

const Rational& need_number(const Value& v, std::string_view fn) {
  if (!v.is_number()) sort_error(std::string(fn) + " of non-number " + v.to_string());
  return v.num();
}

}  // namespace

// ---------------------------------------------------------------------------
// Value

struct Value::Cell {
  Value car;
  Value cdr;
  std::size_t hash;
};

Value Value::t() {
  Value v;
  v.kind_ = Kind::T;
  return v;
}

Value Value::number(Rational r) {
  Value v;
  v.kind_ = Kind::Num;
  v.num_ = std::move(r);
  return v;
}

Value Value::cons(Value head, Value tail) {
  if (!tail.is_list()) sort_error("cons onto non-list " + tail.to_string());
  Value v;
  v.kind_ = Kind::Cons;
  std::size_t h = mix(mix(0x51ed270b27cf1f9dULL, head.hash()), tail.hash());
  v.cell_ = std::make_shared<const Cell>(Cell{std::move(head), std::move(tail), h});
  return v;
}

Value Value::list(const std::vector<Value>& items) {
  Value acc;
  for (auto it = items.rbegin(); it != items.rend(); ++it) acc = cons(*it, std::move(acc));
  return acc;
}

const Value& Value::car() const {
  static const Value nil_value;
  return is_cons() ? cell_->car : nil_value;
}

const Value& Value::cdr() const {
  static const Value nil_value;
  return is_cons() ? cell_->cdr : nil_value;
}

std::vector<Value> Value::elements() const {
  std::vector<Value> out;
  for (const Value* v = this; v->is_cons(); v = &v->cdr()) out.push_back(v->car());
  return out;
}

std::size_t Value::hash() const {
  switch (kind_) {
    case Kind::Nil: return 0x2545f4914f6cdd1dULL;
    case Kind::T: return 0x1d8e4e27c47d124fULL;
    case Kind::Num: return mix(0x3c6ef372fe94f82bULL, num_.hash());
    case Kind::Cons: return cell_->hash;
  }
  return 0;
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Nil: return "nil";
    case Kind::T: return "t";
    case Kind::Num: return num_.to_string();
    case Kind::Cons: {
      std::string s = "(";
      bool first = true;
      for (const Value* v = this; v->is_cons(); v = &v->cdr()) {
        if (!first) s += ' ';
        first = false;
        s += v->car().to_string();
      }
      return s + ")";
    }
  }
  return "";
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Value::Kind::Nil:
    case Value::Kind::T:
      return true;
    case Value::Kind::Num:
      return a.num_ == b.num_;
    case Value::Kind::Cons:
      if (a.cell_ == b.cell_) return true;
      return a.cell_->hash == b.cell_->hash && a.cell_->car == b.cell_->car && a.cell_->cdr == b.cell_->cdr;
  }
  return false;
}

std::size_t EvalContext::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = k.fn * 0x9e3779b97f4a7c15ULL;
  for (const auto& v : k.args) h = mix(h, v.hash());
  return h;
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

Value apply_builtin(BuiltinOp op, std::span<const Value> a) {
  using O = BuiltinOp;
  switch (op) {
    case O::Symbolp: return Value::boolean(a[0].kind() == Value::Kind::Nil || a[0].kind() == Value::Kind::T);
    case O::Characterp:
    case O::Stringp:
    case O::ComplexRationalp:
      return Value::nil();
    case O::Consp: return Value::boolean(a[0].is_cons());
    case O::Acl2Numberp:
    case O::Rationalp:
      return Value::boolean(a[0].is_number());
    case O::Integerp: return Value::boolean(a[0].is_number() && a[0].num().is_integer());
    case O::Cons: return Value::cons(a[0], a[1]);
    case O::Complex: {
      const Rational& re = need_number(a[0], "complex");
      if (!need_number(a[1], "complex").is_zero()) sort_error("complex numbers are not supported");
      return Value::number(re);
    }
    case O::Car:
      if (!a[0].is_list()) sort_error("car of " + a[0].to_string());
      return a[0].car();
    case O::Cdr:
      if (!a[0].is_list()) sort_error("cdr of " + a[0].to_string());
      return a[0].cdr();
    case O::Denominator: return Value::number(need_number(a[0], "denominator").denominator());
    case O::Numerator: return Value::number(need_number(a[0], "numerator").numerator());
    case O::Realpart: return Value::number(need_number(a[0], "realpart"));
    case O::Imagpart:
      need_number(a[0], "imagpart");
      return Value::number(Rational(0));
    case O::UnaryDiv: {
      const Rational& x = need_number(a[0], "unary-/");
      if (x.is_zero()) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
      return Value::number(Rational(1) / x);
    }
    case O::UnaryMinus: return Value::number(-need_number(a[0], "unary--"));
    case O::Plus: return Value::number(need_number(a[0], "+") + need_number(a[1], "+"));
    case O::Times: return Value::number(need_number(a[0], "*") * need_number(a[1], "*"));
    case O::Equal: return Value::boolean(a[0] == a[1]);
    case O::If: return a[0].truthy() ? a[1] : a[2];
    case O::Less: return Value::boolean(need_number(a[0], "<") < need_number(a[1], "<"));
  }
  sort_error("unknown builtin");
}

void charge(EvalContext& ctx) {
  if (ctx.fuel == 0) throw EvalError(EvalError::Kind::FuelExhausted, "fuel exhausted");
  --ctx.fuel;
}

struct DepthGuard {
  explicit DepthGuard(EvalContext& c) : ctx(c) {
    if (++ctx.depth > kMaxDepth) {
      --ctx.depth;
      throw EvalError(EvalError::Kind::FuelExhausted, "recursion too deep");
    }
  }
  ~DepthGuard() { --ctx.depth; }
  EvalContext& ctx;
};

}  // namespace

// ---------------------------------------------------------------------------
// Compiled form

class Interpreter::Program {
 public:
  enum class Op : unsigned char { Const, Local, If, Builtin, Call, Opaque };
  struct Node {
    Op op = Op::Const;
    BuiltinOp bop = BuiltinOp::If;
    std::size_t index = 0;  // local slot or callee
    Value constant;
    std::string name;
    std::vector<Node> args;
  };
  Node root;
  std::size_t slots = 0;
};

struct Interpreter::Impl {
  struct Fn {
    std::string name;
    std::size_t arity;
    bool recursive;
    Program::Node body;
  };
  std::vector<Fn> fns;
  std::unordered_map<std::string, std::size_t> index;
  std::unordered_map<std::string, std::size_t> opaque;  // declared builtins: arity

  Program::Node compile(const Term& t, const std::vector<std::string>& vars) const {
    using Op = Program::Op;
    Program::Node n;
    switch (t.kind()) {
      case TermKind::Constant:
        if (const auto* b = std::get_if<bool>(&t.literal())) {
          n.constant = Value::boolean(*b);
        } else {
          n.constant = Value::number(std::get<Rational>(t.literal()));
        }
        return n;
      case TermKind::Variable: {
        auto it = std::find(vars.begin(), vars.end(), t.name());
        if (it == vars.end()) throw UndefinedSymbol(t.name(), "evaluation environment");
        n.op = Op::Local;
        n.index = static_cast<std::size_t>(it - vars.begin());
        return n;
      }
      case TermKind::Application:
        break;
    }
    n.name = t.name();
    for (const auto& a : t.args()) n.args.push_back(compile(a, vars));
    if (const BuiltinInfo* b = find_builtin(t.name())) {
      n.op = b->op == BuiltinOp::If ? Op::If : Op::Builtin;
      n.bop = b->op;
    } else if (auto it = index.find(t.name()); it != index.end()) {
      n.op = Op::Call;
      n.index = it->second;
    } else if (opaque.count(t.name())) {
      n.op = Op::Opaque;
    } else {
      throw UndefinedSymbol(t.name(), "evaluation");
    }
    return n;
  }

  Value exec(const Program::Node& n, std::span<const Value> locals, EvalContext& ctx) const {
    using Op = Program::Op;
    switch (n.op) {
      case Op::Const:
        return n.constant;
      case Op::Local:
        return locals[n.index];
      case Op::If: {
        charge(ctx);
        Value c = exec(n.args[0], locals, ctx);
        return exec(n.args[c.truthy() ? 1 : 2], locals, ctx);
      }
      case Op::Builtin: {
        Value vals[2];
        for (std::size_t i = 0; i < n.args.size(); ++i) vals[i] = exec(n.args[i], locals, ctx);
        charge(ctx);
        return apply_builtin(n.bop, std::span<const Value>(vals, n.args.size()));
      }
      case Op::Call: {
        std::vector<Value> vals;
        vals.reserve(n.args.size());
        for (const auto& a : n.args) vals.push_back(exec(a, locals, ctx));
        return call(n.index, std::move(vals), ctx);
      }
      case Op::Opaque:
        sort_error("'" + n.name + "' has no evaluation semantics");
    }
    sort_error("bad node");
  }

  Value call(std::size_t fi, std::vector<Value> args, EvalContext& ctx) const {
    charge(ctx);
    const Fn& fn = fns[fi];
    if (!fn.recursive) {
      DepthGuard g(ctx);
      return exec(fn.body, args, ctx);
    }
    EvalContext::Key key{fi, std::move(args)};
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
    Value v;
    {
      DepthGuard g(ctx);
      v = exec(fn.body, key.args, ctx);
    }
    ctx.memo.emplace(std::move(key), v);
    return v;
  }
};

Interpreter::Interpreter(const Corpus& corpus) : corpus_(corpus), impl_(std::make_unique<Impl>()) {
  std::vector<const Definition*> defs;
  for (const auto& d : corpus.dormant_definitions()) defs.push_back(&d);
  for (const auto& d : corpus.definitions()) defs.push_back(&d);
  for (const auto* d : defs) {
    impl_->index[d->name] = impl_->fns.size();
    impl_->fns.push_back({d->name, d->params.size(), d->recursive, {}});
  }
  for (const auto& b : corpus.declared_builtins()) impl_->opaque[b.name] = b.arity;
  for (std::size_t i = 0; i < defs.size(); ++i) impl_->fns[i].body = impl_->compile(defs[i]->body, defs[i]->params);
}

Interpreter::~Interpreter() = default;

std::shared_ptr<const Interpreter::Program> Interpreter::compile(const Term& t,
                                                                 const std::vector<std::string>& vars) const {
  auto p = std::make_shared<Program>();
  p->root = impl_->compile(t, vars);
  p->slots = vars.size();
  return p;
}

Value Interpreter::run(const Program& p, std::span<const Value> args, EvalContext& ctx) const {
  if (args.size() != p.slots) throw UsageError("run: wrong number of arguments");
  return impl_->exec(p.root, args, ctx);
}

Value Interpreter::eval(const Term& t, const Env& env, EvalContext& ctx) const {
  std::vector<std::string> names;
  std::vector<Value> vals;
  for (const auto& v : variables_of(t)) {
    auto it = env.find(v);
    if (it == env.end()) throw UndefinedSymbol(v, "evaluation environment");
    names.push_back(v);
    vals.push_back(it->second);
  }
  return impl_->exec(impl_->compile(t, names), vals, ctx);
}

Value Interpreter::eval(const Term& t, const Env& env, std::uint64_t fuel) const {
  EvalContext ctx(fuel);
  return eval(t, env, ctx);
}

Value Interpreter::apply(const std::string& fn, std::span<const Value> args, EvalContext& ctx) const {
  if (const BuiltinInfo* b = find_builtin(fn)) {
    if (args.size() != b->arity) throw ArityMismatch(fn, b->arity, args.size());
    charge(ctx);
    return apply_builtin(b->op, args);
  }
  auto it = impl_->index.find(fn);
  if (it == impl_->index.end()) {
    if (impl_->opaque.count(fn)) sort_error("'" + fn + "' has no evaluation semantics");
    throw UndefinedSymbol(fn, "evaluation");
  }
  const auto& f = impl_->fns[it->second];
  if (args.size() != f.arity) throw ArityMismatch(fn, f.arity, args.size());
  return impl_->call(it->second, std::vector<Value>(args.begin(), args.end()), ctx);
}

Value eval(const Corpus& corpus, const Term& t, const Env& env, std::uint64_t fuel) {
  Interpreter interp(corpus);
  return interp.eval(t, env, fuel);
}

// ---------------------------------------------------------------------------
// Test data

namespace {

void all_lists(std::size_t max_len, std::vector<Value>& out) {
  // By length, then lexicographically.
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= 4;
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<Value> items(len);
      std::size_t c = code;
      for (std::size_t i = len; i-- > 0;) {
        items[i] = Value::number(Rational(static_cast<std::int64_t>(c % 4)));
        c /= 4;
      }
      out.push_back(Value::list(items));
    }
  }
}

}  // namespace

std::vector<Value> gen_prefix(Sort sort, std::size_t bound, std::size_t max_list_length) {
  std::vector<Value> out;
  auto b = static_cast<std::int64_t>(bound);
  switch (sort) {
    case Sort::Nat:
      for (std::int64_t i = 0; i <= b; ++i) out.push_back(Value::number(Rational(i)));
      break;
    case Sort::Int:
      for (std::int64_t i = -b; i <= b; ++i) out.push_back(Value::number(Rational(i)));
      break;
    case Sort::Rational:
      for (std::int64_t i = -b; i <= b; ++i) out.push_back(Value::number(Rational(i)));
      for (auto [p, q] : {std::pair{1, 2}, {-1, 2}, {1, 3}, {-1, 3}, {3, 2}, {-3, 2}}) {
        out.push_back(Value::number(Rational::fraction(p, q)));
      }
      break;
    case Sort::Bool:
      out = {Value::t(), Value::nil()};
      break;
    case Sort::List:
      all_lists(std::min(bound, max_list_length), out);
      break;
    case Sort::Any:
      for (std::int64_t i = 0; i <= b; ++i) out.push_back(Value::number(Rational(i)));
      out.push_back(Value::nil());
      out.push_back(Value::t());
      out.push_back(Value::list({Value::number(Rational(0))}));
      out.push_back(Value::list({Value::number(Rational(1)), Value::number(Rational(2))}));
      break;
  }
  return out;
}

std::vector<Value> gen_values(Sort sort, std::size_t bound, std::uint64_t seed, std::size_t max_list_length) {
  std::vector<Value> out = gen_prefix(sort, bound, max_list_length);
  if (sort == Sort::Bool) return out;
  std::mt19937_64 rng(splitmix(seed ^ (static_cast<std::uint64_t>(sort) << 32)));
  auto b = static_cast<std::int64_t>(bound);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  constexpr int kExtras = 8;
  for (int i = 0; i < kExtras; ++i) {
    switch (sort) {
      case Sort::Nat:
      case Sort::Any:
        out.push_back(Value::number(Rational(uniform(b + 1, 2 * b + 2))));
        break;
      case Sort::Int: {
        std::int64_t m = uniform(b + 1, 2 * b + 2);
        out.push_back(Value::number(Rational(uniform(0, 1) ? m : -m)));
        break;
      }
      case Sort::Rational:
        out.push_back(Value::number(Rational::fraction(uniform(-4 * b - 4, 4 * b + 4), uniform(1, 7))));
        break;
      case Sort::List: {
        std::vector<Value> items(static_cast<std::size_t>(uniform(static_cast<std::int64_t>(max_list_length) + 1,
                                                                   static_cast<std::int64_t>(max_list_length) + 4)));
        for (auto& v : items) v = Value::number(Rational(uniform(0, 9)));
        out.push_back(Value::list(items));
        break;
      }
      case Sort::Bool:
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjectures

Term Conjecture::statement() const {
  Term eq = Term::apply("equal", {lhs, rhs});
  if (hypotheses.empty()) return eq;
  Term h = hypotheses.back();
  for (std::size_t i = hypotheses.size() - 1; i-- > 0;) h = Term::apply("and", {hypotheses[i], h});
  return Term::apply("implies", {h, eq});
}

std::string Conjecture::to_string() const { return statement().to_string(); }

std::string_view verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Falsified: return "falsified";
    case Verdict::Kind::Survived: return "survived";
    case Verdict::Kind::Undecided: return "undecided";
  }
  return "";
}

Verdict check_conjecture(const Interpreter& interp, const Conjecture& c, const TestBudget& budget) {
  std::vector<std::string> names;
  for (const auto& [n, s] : c.variables) names.push_back(n);
  auto lhs = interp.compile(c.lhs, names);
  auto rhs = interp.compile(c.rhs, names);
  std::vector<std::shared_ptr<const Interpreter::Program>> hyps;
  for (const auto& h : c.hypotheses) hyps.push_back(interp.compile(h, names));

  Verdict verdict;
  bool done = false;

  auto test = [&](const std::vector<Value>& args) {
    ++verdict.attempted;
    EvalContext ctx(budget.fuel);
    try {
      for (const auto& h : hyps) {
        ctx.fuel = budget.fuel;
        if (!interp.run(*h, args, ctx).truthy()) return;
      }
      ctx.fuel = budget.fuel;
      Value l = interp.run(*lhs, args, ctx);
      ctx.fuel = budget.fuel;
      Value r = interp.run(*rhs, args, ctx);
      ++verdict.tests_run;
      if (!(l == r)) {
        verdict.kind = Verdict::Kind::Falsified;
        for (std::size_t i = 0; i < names.size(); ++i) verdict.assignment[names[i]] = args[i];
        done = true;
      }
    } catch (const EvalError& e) {
      if (e.kind == EvalError::Kind::FuelExhausted) ++verdict.fuel_exhausted;
    }
  };

  const std::size_t n = names.size();
  if (n == 0) {
    test({});
  } else {
    // Exhaustive prefix, shrinking the bound until the product fits.
    std::size_t bound = budget.bound;
    std::vector<std::vector<Value>> prefix;
    for (;;) {
      prefix.clear();
      double product = 1;
      for (const auto& [name, sort] : c.variables) {
        prefix.push_back(gen_prefix(sort, bound, budget.max_list_length));
        product *= static_cast<double>(prefix.back().size());
      }
      if (product <= static_cast<double>(budget.max_exhaustive) || bound == 0) break;
      --bound;
    }
    std::vector<std::size_t> odo(n, 0);
    std::vector<Value> args(n);
    for (std::size_t count = 0; !done && count < budget.max_exhaustive; ++count) {
      for (std::size_t i = 0; i < n; ++i) args[i] = prefix[i][odo[i]];
      test(args);
      bool wrapped = true;
      for (std::size_t i = n; i-- > 0;) {
        if (++odo[i] < prefix[i].size()) {
          wrapped = false;
          break;
        }
        odo[i] = 0;
      }
      if (wrapped) break;
    }

    std::vector<std::vector<Value>> pools;
    for (std::size_t i = 0; i < n; ++i) {
      pools.push_back(gen_values(c.variables[i].second, budget.bound, splitmix(budget.seed + i),
                                 budget.max_list_length));
    }
    std::mt19937_64 rng(splitmix(budget.seed ^ 0xa5a5a5a5ULL));
    for (std::size_t k = 0; !done && k < budget.random_tests; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        args[i] = pools[i][std::uniform_int_distribution<std::size_t>(0, pools[i].size() - 1)(rng)];
      }
      test(args);
    }
  }

  if (!done && verdict.attempted > 0 && 2 * verdict.fuel_exhausted > verdict.attempted) {
    verdict.kind = Verdict::Kind::Undecided;
  }
  return verdict;
}

Verdict check_conjecture(const Corpus& corpus, const Conjecture& c, const TestBudget& budget) {
  Interpreter interp(corpus);
  return check_conjecture(interp, c, budget);
}

}  // namespace acl2ml
