#include "odecirc/eval.hpp"

#include <bit>
#include <unordered_map>

namespace odecirc {

namespace {

int require_bool(const Value& v, const char* role) {
  if (v == 0) return 0;
  if (v == 1) return 1;
  throw EvalError(EvalCode::BooleanRange,
                  std::string(role) + " sample " + v.str() + " outside {0,1}");
}

inline size_t hash_value_fast(const Value& v) {
  const auto& be = v.backend();
  size_t h = be.sign() ? 0x517cc1b727220a95ull : 0x2545f4914f6cdd1dull;
  for (unsigned i = 0; i < be.size(); ++i)
    h ^= static_cast<size_t>(be.limbs()[i]) + 0x9e3779b97f4a7c15ull + (h << 6) +
         (h >> 2);
  return h;
}

struct ArgsHash {
  size_t operator()(const std::pair<const Term*, std::vector<Value>>& k) const {
    size_t h = std::hash<const void*>()(k.first);
    for (const auto& v : k.second)
      h ^= hash_value_fast(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

// One evaluation pass. `stepwise` switches every schema node to the literal
// difference-equation iteration (the independent oracle).
struct EvalCtx {
  const OracleBindings* oracles;
  bool stepwise = false;
  unsigned long bound = 1ul << 16;
  std::unordered_map<std::pair<const Term*, std::vector<Value>>, Value, ArgsHash>
      memo;

  Value child(const TermPtr& t, const std::vector<Value>& args);
  Value node(const TermPtr& t, const std::vector<Value>& args);
  Value schema_closed(const TermPtr& t, const Value& x, const std::vector<Value>& ys);
  Value schema_stepwise(const TermPtr& t, const Value& x,
                        const std::vector<Value>& ys);
  Value step_rhs(const TermPtr& t, const Value& f, const Value& tval,
                 const std::vector<Value>& ys);

  Fn fn_of(const TermPtr& t) {
    return [this, t](const std::vector<Value>& args) { return child(t, args); };
  }
};

Value EvalCtx::child(const TermPtr& t, const std::vector<Value>& args) {
  // memoize where evaluation is expensive or sharing pays; plain arithmetic
  // nodes are cheaper to recompute than to hash
  switch (t->kind) {
    case TermKind::Const0:
      return 0;
    case TermKind::Const1:
      return 1;
    case TermKind::Proj:
      return args.at(t->proj_index - 1);
    case TermKind::Length:
    case TermKind::Sign:
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Div2:
    case TermKind::Times:
      return node(t, args);
    default:
      break;
  }
  auto key = std::make_pair(t.get(), args);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Value v = node(t, args);
  memo.emplace(std::move(key), v);
  return v;
}

Value EvalCtx::node(const TermPtr& t, const std::vector<Value>& args) {
  switch (t->kind) {
    case TermKind::Const0: return 0;
    case TermKind::Const1: return 1;
    case TermKind::Length: return len(child(t->kids[0], args));
    case TermKind::Sign: return sg(child(t->kids[0], args));
    case TermKind::Add: return child(t->kids[0], args) + child(t->kids[1], args);
    case TermKind::Sub: return child(t->kids[0], args) - child(t->kids[1], args);
    case TermKind::Div2: return fdiv2(child(t->kids[0], args));
    case TermKind::Times:
      return child(t->kids[0], args) * child(t->kids[1], args);
    case TermKind::Proj: return args.at(t->proj_index - 1);
    case TermKind::Compose: {
      std::vector<Value> inner;
      inner.reserve(t->kids.size() - 1);
      for (size_t i = 1; i < t->kids.size(); ++i)
        inner.push_back(child(t->kids[i], args));
      return child(t->kids[0], inner);
    }
    case TermKind::Oracle: {
      if (!oracles || !oracles->count(t->oracle_name))
        throw EvalError(EvalCode::MissingOracle,
                        "no binding for oracle '" + t->oracle_name + "'");
      return oracles->at(t->oracle_name)(args);
    }
    default: {
      // schema node: first argument derives, the rest are parameters
      Value x = args.at(0);
      std::vector<Value> ys(args.begin() + 1, args.end());
      if (stepwise) return schema_stepwise(t, x, ys);
      return schema_closed(t, x, ys);
    }
  }
}

Value EvalCtx::schema_closed(const TermPtr& t, const Value& x,
                             const std::vector<Value>& ys) {
  switch (t->kind) {
    case TermKind::Ode1:
      return solve_ode1(fn_of(t->kids[0]), fn_of(t->kids[1]), x, ys);
    case TermKind::Ode2:
      return solve_ode2(fn_of(t->kids[0]), fn_of(t->kids[1]), fn_of(t->kids[2]),
                        x, ys, false);
    case TermKind::Ode2Star:
      return solve_ode2(fn_of(t->kids[0]), fn_of(t->kids[1]), fn_of(t->kids[2]),
                        x, ys, true);
    case TermKind::Ode3:
      return solve_ode3(fn_of(t->kids[0]), x, ys);
    case TermKind::Ode4:
      return solve_ode4(fn_of(t->kids[0]), fn_of(t->kids[1]), t->dir, x, ys);
    case TermKind::Ode1Star:
      return solve_ode1_star(fn_of(t->kids[0]), fn_of(t->kids[1]),
                             fn_of(t->kids[2]), x, ys);
    default:
      throw std::logic_error("not a schema node");
  }
}

std::vector<Value> with_x(const Value& x, const std::vector<Value>& ys) {
  std::vector<Value> a;
  a.reserve(ys.size() + 1);
  a.push_back(x);
  for (const auto& y : ys) a.push_back(y);
  return a;
}

// RHS of the difference equation at a jump: the value of f after the length
// of the derivation variable increases by one.
Value EvalCtx::step_rhs(const TermPtr& t, const Value& f, const Value& tval,
                        const std::vector<Value>& ys) {
  switch (t->kind) {
    case TermKind::Ode1: {
      Value h = child(t->kids[1], with_x(tval, ys));
      return f + f + require_bool(h, "h");
    }
    case TermKind::Ode2:
    case TermKind::Ode2Star: {
      Value h = child(t->kids[1], with_x(tval, ys));
      int hb = require_bool(h, "h");
      Value kv = child(t->kids[2], ys);
      if (t->kind == TermKind::Ode2 && kv == 0 && hb == 1)
        throw EvalError(EvalCode::KZeroWithHOne,
                        "h hit 1 while k = 0 under the non-star schema");
      return (f << len(kv)) + hb;
    }
    case TermKind::Ode3:
      return fdiv2(f);
    case TermKind::Ode4: {
      Value kv = child(t->kids[1], ys);
      if (kv == 0) return f;
      unsigned K = len(kv);
      if (t->dir == Ode4Dir::Minus) return fdiv_pow2(f, K);
      return f << K;
    }
    case TermKind::Ode1Star: {
      Value h = child(t->kids[1], with_x(tval, ys));
      Value kv = child(t->kids[2], with_x(tval, ys));
      int hb = require_bool(h, "h");
      int kb = require_bool(kv, "k");
      return f * (1 + kb) + hb;
    }
    default:
      throw std::logic_error("not a schema node");
  }
}

Value EvalCtx::schema_stepwise(const TermPtr& t, const Value& x,
                               const std::vector<Value>& ys) {
  if (x < 0 || x > bound)
    throw EvalError(EvalCode::BoundExceeded,
                    "step iteration bound exceeded at x = " + x.str());
  Value f = child(t->kids[0], ys);  // f(0, ys) = g(ys)
  unsigned long xi = x.convert_to<unsigned long>();
  unsigned prev_len = 0;
  for (unsigned long u = 0; u < xi; ++u) {
    unsigned next_len = std::bit_width(u + 1);
    if (next_len != prev_len) f = step_rhs(t, f, Value(u), ys);
    prev_len = next_len;
  }
  return f;
}

}  // namespace

Value solve_ode1(const Fn& g, const Fn& h, const Value& x,
                 const std::vector<Value>& ys) {
  unsigned L = len(x);
  Value acc = g(ys) << L;
  for (unsigned u = 0; u < L; ++u) {
    int hb = require_bool(h(with_x(alpha(u), ys)), "h");
    if (hb) acc += pow2(L - u - 1);
  }
  return acc;
}

Value solve_ode2(const Fn& g, const Fn& h, const Fn& k, const Value& x,
                 const std::vector<Value>& ys, bool star) {
  unsigned L = len(x);
  Value kv = k(ys);
  unsigned K = len(kv);
  Value acc = g(ys) << (static_cast<unsigned long long>(K) * L);
  for (unsigned u = 0; u < L; ++u) {
    int hb = require_bool(h(with_x(alpha(u), ys)), "h");
    if (hb) {
      if (!star && kv == 0)
        throw EvalError(EvalCode::KZeroWithHOne,
                        "h hit 1 while k = 0 under the non-star schema");
      acc += pow2(K * (L - u - 1));
    }
  }
  return acc;
}

Value solve_ode3(const Fn& g, const Value& x, const std::vector<Value>& ys) {
  return fdiv_pow2(g(ys), len(x));
}

Value solve_ode4(const Fn& g, const Fn& k, Ode4Dir dir, const Value& x,
                 const std::vector<Value>& ys) {
  Value gv = g(ys);
  Value kv = k(ys);
  if (kv == 0) return gv;
  unsigned long long amount = static_cast<unsigned long long>(len(kv)) * len(x);
  if (dir == Ode4Dir::Minus) return fdiv_pow2(gv, static_cast<unsigned>(amount));
  return gv << amount;
}

Value solve_ode1_star(const Fn& g, const Fn& h, const Fn& k, const Value& x,
                      const std::vector<Value>& ys) {
  unsigned L = len(x);
  // suffix[u] = prod_{t=u+1}^{L-1} (1 + k(alpha(t))) for u in -1..L-1
  std::vector<int> kb(L), hb(L);
  for (unsigned u = 0; u < L; ++u) {
    hb[u] = require_bool(h(with_x(alpha(u), ys)), "h");
    kb[u] = require_bool(k(with_x(alpha(u), ys)), "k");
  }
  std::vector<Value> suffix(L + 2, 1);
  // suffix indexed by u+1: suffix[L] corresponds to u = L-1 (empty product)
  for (int u = static_cast<int>(L) - 2; u >= -1; --u)
    suffix[u + 1] = suffix[u + 2] * (1 + kb[u + 1]);
  Value acc = suffix[0] * g(ys);
  for (unsigned u = 0; u < L; ++u)
    if (hb[u]) acc += suffix[u + 1];
  return acc;
}

Value eval(const CheckedTerm& t, const Env& env) {
  if (env.args.size() != t.arity())
    throw EvalError(EvalCode::BadEnv, "argument tuple length " +
                                          std::to_string(env.args.size()) +
                                          " does not match arity " +
                                          std::to_string(t.arity()));
  EvalCtx ctx{env.oracles};
  return ctx.child(t.term(), env.args);
}

Value step_oracle(const CheckedTerm& t, const Value& x, const Env& params,
                  unsigned long bound) {
  EvalCtx ctx{params.oracles};
  ctx.stepwise = true;
  ctx.bound = bound;
  std::vector<Value> args = with_x(x, params.args);
  if (args.size() != t.arity())
    throw EvalError(EvalCode::BadEnv, "argument tuple does not match arity");
  return ctx.child(t.term(), args);
}

std::vector<Value> step_oracle_sweep(const CheckedTerm& t, unsigned long xmax,
                                     const Env& params) {
  const TermPtr& root = t.term();
  if (!is_schema(root->kind))
    throw EvalError(EvalCode::BadEnv, "sweep requires a schema-rooted term");
  EvalCtx ctx{params.oracles};
  std::vector<Value> out;
  out.reserve(xmax + 1);
  Value f = ctx.child(root->kids[0], params.args);  // f(0)
  out.push_back(f);
  unsigned prev_len = 0;
  for (unsigned long u = 0; u < xmax; ++u) {
    unsigned next_len = std::bit_width(u + 1);
    if (next_len != prev_len) f = ctx.step_rhs(root, f, Value(u), params.args);
    prev_len = next_len;
    out.push_back(f);
  }
  return out;
}

struct EvalSession::Impl {
  EvalCtx ctx;
  size_t max_entries;
};

EvalSession::EvalSession(const OracleBindings* oracles, size_t max_entries)
    : impl_(new Impl{EvalCtx{oracles}, max_entries}) {}

EvalSession::~EvalSession() = default;

Value EvalSession::eval(const CheckedTerm& t, const std::vector<Value>& args) {
  if (args.size() != t.arity())
    throw EvalError(EvalCode::BadEnv, "argument tuple does not match arity");
  if (impl_->ctx.memo.size() > impl_->max_entries) impl_->ctx.memo.clear();
  return impl_->ctx.child(t.term(), args);
}

void EvalSession::reset() { impl_->ctx.memo.clear(); }

Value solve_linear_length_ode(
    const PolyPtr& A, const PolyPtr& B, const Value& g, const Value& x,
    const std::vector<Value>& params,
    const std::map<std::string, std::function<Value(const Value&)>>& hooks) {
  if (!is_essentially_constant(A, {"f"}))
    throw EvalError(EvalCode::NotEssentiallyConstant,
                    "A is not essentially constant in f");
  if (!is_essentially_constant(B, {"f"}))
    throw EvalError(EvalCode::NotEssentiallyConstant,
                    "B is not essentially constant in f");
  unsigned L = len(x);

  auto bind = [&](const Value& point, const Value& fval) {
    std::map<std::string, Value> env;
    env["x"] = point;
    env["f"] = fval;
    for (size_t i = 0; i < params.size(); ++i)
      env["y" + std::to_string(i + 1)] = params[i];
    for (const auto& [name, fn] : hooks) env[name] = fn(point);
    return env;
  };

  // Fill f at the jump points via the recurrence; the literal sum-of-products
  // below references those samples.
  std::vector<Value> fsamples;  // f(alpha(u)) for u = 0..L-1
  fsamples.reserve(L);
  Value f = g;
  for (unsigned u = 0; u < L; ++u) {
    fsamples.push_back(f);
    auto env = bind(alpha(u), f);
    f = (1 + eval_poly(A, env)) * f + eval_poly(B, env);
  }

  // sum_{u=-1}^{L-1} [ prod_{t=u+1}^{L-1} (1 + A(alpha(t),...)) ] * B(alpha(u),...)
  Value total = 0;
  for (int u = -1; u < static_cast<int>(L); ++u) {
    Value prod = 1;
    for (unsigned tt = static_cast<unsigned>(u + 1); tt < L; ++tt) {
      auto env = bind(alpha(tt), fsamples[tt]);
      prod *= 1 + eval_poly(A, env);
    }
    Value bval;
    if (u == -1) {
      bval = g;  // convention B(., ., -1, y) = f(0, y)
    } else {
      auto env = bind(alpha(static_cast<unsigned>(u)), fsamples[static_cast<unsigned>(u)]);
      bval = eval_poly(B, env);
    }
    total += prod * bval;
  }
  return total;
}

}  // namespace odecirc
