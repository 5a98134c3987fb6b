#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "odecirc/eval.hpp"
#include "odecirc/mode.hpp"
#include "odecirc/term.hpp"

namespace odecirc {

// A derived algebra function paired with the arithmetic function it is meant
// to compute. The oracle/term agreement is enforced by the test suite over
// the declared regime, not at construction.
struct NamedTerm {
  std::string name;
  TermPtr term;
  std::function<Value(const std::vector<Value>&)> oracle;
  // Inputs the oracle is declared for; defaults to all nonnegative tuples.
  std::function<bool(const std::vector<Value>&)> in_regime;
  std::vector<Mode> modes;  // presets under which the term validates

  unsigned arity() const { return term->arity; }
  bool regime_ok(const std::vector<Value>& args) const {
    return !in_regime || in_regime(args);
  }
};

// Term plumbing -------------------------------------------------------------

// Composition f(args...); plain wrapper over t_comp.
TermPtr tapply(const TermPtr& f, std::vector<TermPtr> args);

// Re-embed t into an arity-q context, argument i of t becoming argument
// argmap[i-1] of the result. Works for any term, including 0-ary constants.
TermPtr lift(const TermPtr& t, unsigned q, const std::vector<unsigned>& argmap);

// Boolean glue over {0,1}-valued terms.
TermPtr b_and(TermPtr a, TermPtr b);   // sg(a + b - 1)
TermPtr b_or(TermPtr a, TermPtr b);    // sg(a + b)
TermPtr b_not(TermPtr a);              // 1 - sg(a)
TermPtr t_geq(TermPtr a, TermPtr b);   // [a >= b] = cosg(b - a)
TermPtr t_eq(TermPtr a, TermPtr b);    // [a = b]

// Constructors for the derived functions -----------------------------------

NamedTerm mk_shift();   // (x,y) -> 2^{l(x)} * y
NamedTerm mk_smash();   // (x,y) -> 2^{l(x)*l(y)}
NamedTerm mk_msp();     // (x,y) -> floor(y / 2^{l(x)})
NamedTerm mk_if();      // (x,y,z) -> y if x=0 else z
NamedTerm mk_cond();    // (x,v,y,z) -> y if x<v else z
NamedTerm mk_bit();     // (x,y) -> the l(y)-th bit of x
NamedTerm mk_bexp_aux();// (t,x,i) -> 2^{l(t)-i} for i <= l(t) (2^{l(t)} at i=0)
NamedTerm mk_bexp();    // (x,i) -> 2^i for i <= l(x)
NamedTerm mk_BIT();     // (x,y) -> floor(x / 2^y) mod 2
NamedTerm mk_mod2();
NamedTerm mk_s0();
NamedTerm mk_s1();
NamedTerm mk_cosg();
NamedTerm mk_bcount();  // popcount, TC-star only

// Concatenation recursion on notation: f(0,y)=g(y), f(s_i(x),y)=s_{h_i(x,y)}(f(x,y)).
// Throws TermError("NonBooleanStep") when h0/h1 fail the boolean judgment.
NamedTerm mk_crn(const NamedTerm& g, const NamedTerm& h0, const NamedTerm& h1);

// Bounded quantifiers over z <= l(x), driven by the first argument.
NamedTerm mk_bounded_exists(const NamedTerm& h_R);
NamedTerm mk_bounded_forall(const NamedTerm& h_R);

// min_{i <= l(x1)^k} { g(i,xs) : h(i,xs) = 1 }, sentinel 1 when no index
// qualifies. Values of g over the scanned range must fit in l(x1)^k bits
// (always true for boolean g and for index-valued g).
NamedTerm mk_min(const NamedTerm& g, const NamedTerm& h, unsigned k);

// 2^{l(x1)^k} - 1: the quantifier driver whose length is l(x1)^k.
TermPtr index_space_term(unsigned k, unsigned arity, unsigned arg = 1);

// Registry ------------------------------------------------------------------

const std::vector<NamedTerm>& stdlib_registry();
std::optional<NamedTerm> stdlib_lookup(const std::string& name);

// Bindings for the named oracle basics ("#").
const OracleBindings& standard_oracle_bindings();

// Presets (of the seven) under which t validates.
std::vector<Mode> modes_accepting(const TermPtr& t);

}  // namespace odecirc
