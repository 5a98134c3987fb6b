#include "odecirc/polyexpr.hpp"

#include <algorithm>
#include <stdexcept>

namespace odecirc {

namespace {
PolyPtr mk(PolyExpr p) { return std::make_shared<const PolyExpr>(std::move(p)); }
}

PolyPtr p_const(Value v) { return mk({PolyKind::IntConst, std::move(v), {}, {}}); }
PolyPtr p_var(std::string name) {
  return mk({PolyKind::Var, 0, std::move(name), {}});
}
PolyPtr p_add(PolyPtr l, PolyPtr r) {
  return mk({PolyKind::Add, 0, {}, {std::move(l), std::move(r)}});
}
PolyPtr p_sub(PolyPtr l, PolyPtr r) {
  return mk({PolyKind::Sub, 0, {}, {std::move(l), std::move(r)}});
}
PolyPtr p_mul(PolyPtr l, PolyPtr r) {
  return mk({PolyKind::Mul, 0, {}, {std::move(l), std::move(r)}});
}
PolyPtr p_sg(PolyPtr t) { return mk({PolyKind::Sg, 0, {}, {std::move(t)}}); }

unsigned degree(const PolyPtr& p, const std::set<std::string>& vars) {
  switch (p->kind) {
    case PolyKind::IntConst:
    case PolyKind::Sg:
      return 0;
    case PolyKind::Var:
      return vars.count(p->var) ? 1u : 0u;
    case PolyKind::Add:
    case PolyKind::Sub:
      return std::max(degree(p->kids[0], vars), degree(p->kids[1], vars));
    case PolyKind::Mul:
      return degree(p->kids[0], vars) + degree(p->kids[1], vars);
  }
  return 0;
}

namespace {
bool contains_sg(const PolyPtr& p) {
  if (p->kind == PolyKind::Sg) return true;
  for (const auto& k : p->kids)
    if (contains_sg(k)) return true;
  return false;
}
}

bool has_nested_sg(const PolyPtr& p) {
  if (p->kind == PolyKind::Sg && contains_sg(p->kids[0])) return true;
  for (const auto& k : p->kids)
    if (has_nested_sg(k)) return true;
  return false;
}

std::set<std::string> poly_vars(const PolyPtr& p) {
  std::set<std::string> out;
  if (p->kind == PolyKind::Var) out.insert(p->var);
  for (const auto& k : p->kids)
    for (auto& v : poly_vars(k)) out.insert(v);
  return out;
}

Value eval_poly(const PolyPtr& p, const std::map<std::string, Value>& env) {
  switch (p->kind) {
    case PolyKind::IntConst:
      return p->cval;
    case PolyKind::Var: {
      auto it = env.find(p->var);
      if (it == env.end())
        throw std::runtime_error("unbound poly variable " + p->var);
      return it->second;
    }
    case PolyKind::Add:
      return eval_poly(p->kids[0], env) + eval_poly(p->kids[1], env);
    case PolyKind::Sub:
      return eval_poly(p->kids[0], env) - eval_poly(p->kids[1], env);
    case PolyKind::Mul:
      return eval_poly(p->kids[0], env) * eval_poly(p->kids[1], env);
    case PolyKind::Sg:
      return sg(eval_poly(p->kids[0], env));
  }
  return 0;
}

}  // namespace odecirc
