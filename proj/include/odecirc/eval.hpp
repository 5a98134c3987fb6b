#pragma once

#include <functional>
#include <memory>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "odecirc/polyexpr.hpp"
#include "odecirc/validate.hpp"
#include "odecirc/value.hpp"

namespace odecirc {

enum class EvalCode {
  BooleanRange,     // an h (or k) sample left {0,1}
  KZeroWithHOne,    // non-star ODE2 side condition
  MissingOracle,
  BoundExceeded,
  NotEssentiallyConstant,
  BadEnv,
};

struct EvalError : std::runtime_error {
  EvalCode code;
  EvalError(EvalCode c, const std::string& msg)
      : std::runtime_error(msg), code(c) {}
};

using OracleFn = std::function<Value(const std::vector<Value>&)>;
using OracleBindings = std::map<std::string, OracleFn>;

// Argument tuple plus host oracle bindings. Length must match the term arity.
struct Env {
  std::vector<Value> args;
  const OracleBindings* oracles = nullptr;

  Env() = default;
  Env(std::vector<Value> a) : args(std::move(a)) {}
  Env(std::vector<Value> a, const OracleBindings* o)
      : args(std::move(a)), oracles(o) {}
};

// Closed-form evaluation: schema nodes are solved by the explicit sum/product
// formulas, which sample their children at the jump points alpha(u) only.
// Memoizes per (subterm, argument tuple) within one call.
Value eval(const CheckedTerm& t, const Env& env);

// Reusable memo across calls, for harnesses that sweep many related inputs of
// pure terms. The table is bounded; it resets once max_entries is reached.
class EvalSession {
 public:
  explicit EvalSession(const OracleBindings* oracles = nullptr,
                       size_t max_entries = 1u << 20);
  ~EvalSession();
  EvalSession(const EvalSession&) = delete;
  EvalSession& operator=(const EvalSession&) = delete;

  Value eval(const CheckedTerm& t, const std::vector<Value>& args);
  void reset();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Difference-equation oracle: iterates f(t+1) = f(t) + delta_len(t) * rhs
// literally from 0 up to the schema argument for every schema node
// encountered. Exact against eval; O(x) per schema node.
Value step_oracle(const CheckedTerm& t, const Value& x, const Env& params,
                  unsigned long bound = 1ul << 16);

// Sweep variant: values of the root schema at every first argument 0..xmax
// in a single forward iteration (params fixed). Requires a schema-rooted term.
std::vector<Value> step_oracle_sweep(const CheckedTerm& t, unsigned long xmax,
                                     const Env& params);

// General linear length-ODE solution, used only as a testing oracle.
// A and B are sg-polynomial expressions over the variables
//   "x"          the jump point alpha(u) / alpha(t)
//   "y1".."yp"   the parameters
//   "f"          the solution value at the sampled point
// plus any name given a hook, evaluated at the sampled point. A and B must be
// essentially constant in {"f"}.
Value solve_linear_length_ode(
    const PolyPtr& A, const PolyPtr& B, const Value& g, const Value& x,
    const std::vector<Value>& params,
    const std::map<std::string, std::function<Value(const Value&)>>& hooks = {});

// Direct schema solvers (closed forms). Children g,h,k are evaluated through
// the supplied callbacks so both the evaluator and tests can drive them.
using Fn = std::function<Value(const std::vector<Value>&)>;

Value solve_ode1(const Fn& g, const Fn& h, const Value& x,
                 const std::vector<Value>& ys);
Value solve_ode2(const Fn& g, const Fn& h, const Fn& k, const Value& x,
                 const std::vector<Value>& ys, bool star);
Value solve_ode3(const Fn& g, const Value& x, const std::vector<Value>& ys);
Value solve_ode4(const Fn& g, const Fn& k, Ode4Dir dir, const Value& x,
                 const std::vector<Value>& ys);
Value solve_ode1_star(const Fn& g, const Fn& h, const Fn& k, const Value& x,
                      const std::vector<Value>& ys);

}  // namespace odecirc
