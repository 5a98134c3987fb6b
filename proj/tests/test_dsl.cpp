#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "odecirc/dsl.hpp"
#include "odecirc/eval.hpp"
#include "odecirc/stdterms.hpp"

using namespace odecirc;

TEST_CASE("msp core and std lookup parse") {
  TermPtr msp = parse_dsl("(ode3 (proj 1 1))");
  CHECK(msp->kind == TermKind::Ode3);
  CHECK(msp->arity == 2);

  TermPtr sm = parse_dsl("(std smash)");
  CHECK(sm == stdlib_lookup("smash")->term);
  CHECK(to_string(sm) == to_string(mk_smash().term));
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(parse_dsl("(+ 0"), ParseError);
  CHECK_THROWS_AS(parse_dsl(""), ParseError);
  CHECK_THROWS_AS(parse_dsl("(std nosuch)"), ParseError);
  try {
    parse_dsl("(std nosuch)");
  } catch (const ParseError& e) {
    CHECK(e.code == "UnknownStdName");
  }
}

TEST_CASE("variables fix the arity context") {
  TermPtr t = parse_dsl("(* x1 x2)");
  CHECK(t->arity == 2);
  CHECK(t->kind == TermKind::Times);

  TermPtr widened = parse_dsl("(+ x1 x1)", 3);
  CHECK(widened->arity == 3);

  CHECK_THROWS_AS(parse_dsl("(+ x1 x3)", 2), ParseError);
}

TEST_CASE("comments and whitespace are ignored") {
  TermPtr t = parse_dsl("; shift core\n( ode1 (proj 1 1) ; g\n  0 )");
  CHECK(t->kind == TermKind::Ode1);
  auto r = validate(t, Mode::ACDL);
  REQUIRE(r.ok());
  CHECK(eval(*r.checked, Env({6, 5})) == 40);
}

TEST_CASE("ode4 direction tokens") {
  TermPtr plus = parse_dsl("(ode4 x1 1 +)");
  CHECK(plus->dir == Ode4Dir::Plus);
  TermPtr minus = parse_dsl("(ode4 x1 1 -)");
  CHECK(minus->dir == Ode4Dir::Minus);
  TermPtr zero = parse_dsl("(ode4 x1 1 0)");
  CHECK(zero->dir == Ode4Dir::Zero);
  CHECK_THROWS_AS(parse_dsl("(ode4 x1 1 ?)"), ParseError);
}

TEST_CASE("oracle form and composition") {
  TermPtr t = parse_dsl("(comp (oracle # 2) x1 x1)");
  CHECK(t->arity == 1);
  auto r = validate(t, preset(Mode::ACDL_SMASH));
  REQUIRE(r.ok());
  Env env({5}, &standard_oracle_bindings());
  CHECK(eval(*r.checked, env) == 512);  // 2^{l(5)*l(5)}
}

TEST_CASE("printing round trips through the parser") {
  for (const char* src :
       {"(ode3 (proj 1 1))", "(ode2 1 0 (proj 1 1))", "(+ x1 (div2 x2))",
        "(ode1* 1 (sg x1) (sg x2))"}) {
    TermPtr t = parse_dsl(src);
    TermPtr again = parse_dsl(to_string(t));
    CHECK(to_string(t) == to_string(again));
  }
}
