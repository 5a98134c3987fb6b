#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "odecirc/value.hpp"

namespace odecirc {

enum class PolyKind { IntConst, Var, Add, Sub, Mul, Sg };

struct PolyExpr;
using PolyPtr = std::shared_ptr<const PolyExpr>;

// sg-polynomial expression over {+,-,*,sg} with named variables.
struct PolyExpr {
  PolyKind kind;
  Value cval;        // IntConst
  std::string var;   // Var
  std::vector<PolyPtr> kids;
};

PolyPtr p_const(Value v);
PolyPtr p_var(std::string name);
PolyPtr p_add(PolyPtr l, PolyPtr r);
PolyPtr p_sub(PolyPtr l, PolyPtr r);
PolyPtr p_mul(PolyPtr l, PolyPtr r);
PolyPtr p_sg(PolyPtr t);

// Degree of a variable set in p: constants 0, member variable 1, non-member 0,
// +/- max, * sum, sg 0.
unsigned degree(const PolyPtr& p, const std::set<std::string>& vars);

inline bool is_essentially_constant(const PolyPtr& p, const std::set<std::string>& vars) {
  return degree(p, vars) == 0;
}
inline bool is_essentially_linear(const PolyPtr& p, const std::set<std::string>& vars) {
  return degree(p, vars) == 1;
}

// True when some sg node contains another sg in its subtree. Weak expressions
// forbid this; flagged by validation, never rejected.
bool has_nested_sg(const PolyPtr& p);

// All variable names occurring in p.
std::set<std::string> poly_vars(const PolyPtr& p);

Value eval_poly(const PolyPtr& p, const std::map<std::string, Value>& env);

}  // namespace odecirc
