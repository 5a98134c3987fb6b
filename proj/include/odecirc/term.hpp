#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace odecirc {

enum class TermKind {
  Const0,
  Const1,
  Length,
  Sign,
  Add,
  Sub,
  Div2,
  Times,
  Proj,
  Compose,
  Ode1,
  Ode2,
  Ode2Star,
  Ode3,
  Ode4,
  Ode1Star,
  Oracle,
};

// Static sign of the 2^{+-l(k)} factor in an Ode4 node. The paper's uses fix
// the sign per instance; Zero marks instances written for k == 0, where the
// direction is immaterial (evaluated like Plus).
enum class Ode4Dir { Plus, Minus, Zero };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable term node. Arities are checked at construction, so a TermPtr is
// always arity-consistent.
struct Term {
  TermKind kind;
  unsigned arity = 0;
  std::vector<TermPtr> kids;

  // Proj
  unsigned proj_index = 0;  // 1-based
  // Oracle
  std::string oracle_name;
  bool oracle_boolean = false;
  // Ode4
  Ode4Dir dir = Ode4Dir::Plus;
};

struct TermError : std::runtime_error {
  std::string code;
  TermError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

// Constructors. Constants and projections carry the ambient arity explicitly;
// everything else derives its arity from the children (InconsistentArity on
// disagreement).
TermPtr t_const0(unsigned arity);
TermPtr t_const1(unsigned arity);
TermPtr t_len(TermPtr t);
TermPtr t_sg(TermPtr t);
TermPtr t_add(TermPtr l, TermPtr r);
TermPtr t_sub(TermPtr l, TermPtr r);
TermPtr t_div2(TermPtr t);
TermPtr t_times(TermPtr l, TermPtr r);
TermPtr t_proj(unsigned index, unsigned arity);
TermPtr t_comp(TermPtr f, std::vector<TermPtr> args);
TermPtr t_ode1(TermPtr g, TermPtr h);
TermPtr t_ode2(TermPtr g, TermPtr h, TermPtr k);
TermPtr t_ode2_star(TermPtr g, TermPtr h, TermPtr k);
TermPtr t_ode3(TermPtr g);
TermPtr t_ode4(TermPtr g, TermPtr k, Ode4Dir dir);
TermPtr t_ode1_star(TermPtr g, TermPtr h, TermPtr k);
TermPtr t_oracle(std::string name, unsigned arity, bool boolean_valued = false);

inline unsigned arity(const TermPtr& t) { return t->arity; }

bool is_schema(TermKind k);

// Syntactic boolean-valuedness: Sign root, the 1-Sign(.) cosign pattern,
// constants, a Compose with boolean outer function, or a boolean oracle.
bool statically_boolean(const TermPtr& t);

// Replace every Oracle node with the matching term from `subst` (keyed by
// oracle name); oracles without a substitute are kept. Arities must agree.
TermPtr substitute_oracles(
    const TermPtr& t,
    const std::vector<std::pair<std::string, TermPtr>>& subst);

// s-expression rendering, mostly for diagnostics and tests.
std::string to_string(const TermPtr& t);

}  // namespace odecirc
