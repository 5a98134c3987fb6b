#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "odecirc/eval.hpp"
#include "odecirc/stdterms.hpp"

using namespace odecirc;

namespace {

CheckedTerm checked_under_first_mode(const NamedTerm& nt) {
  REQUIRE(!nt.modes.empty());
  auto r = validate(nt.term, nt.modes.front());
  REQUIRE(r.ok());
  return *r.checked;
}

Value ev(const NamedTerm& nt, std::vector<Value> args) {
  return eval(checked_under_first_mode(nt), Env(std::move(args)));
}

}  // namespace

TEST_CASE("shift examples") {
  NamedTerm s = mk_shift();
  CHECK(ev(s, {0, 7}) == 7);
  CHECK(ev(s, {6, 5}) == 40);
  CHECK(ev(s, {1, 1}) == 2);
}

TEST_CASE("smash examples") {
  NamedTerm s = mk_smash();
  CHECK(ev(s, {0, 9}) == 1);
  CHECK(ev(s, {3, 5}) == 64);
  CHECK(ev(s, {7, 1}) == 8);
}

TEST_CASE("msp examples") {
  NamedTerm s = mk_msp();
  CHECK(ev(s, {3, 20}) == 5);
  CHECK(ev(s, {0, 11}) == 11);
  CHECK(ev(s, {7, 6}) == 0);
}

TEST_CASE("if and cond examples") {
  NamedTerm f = mk_if();
  CHECK(ev(f, {0, 4, 9}) == 4);
  CHECK(ev(f, {3, 4, 9}) == 9);
  NamedTerm c = mk_cond();
  CHECK(ev(c, {2, 5, 1, 0}) == 1);
  CHECK(ev(c, {5, 5, 1, 0}) == 0);
}

TEST_CASE("bit examples") {
  NamedTerm b = mk_bit();
  CHECK(ev(b, {6, 1}) == 1);  // bit l(1)=1 of 110
  CHECK(ev(b, {6, 0}) == 0);  // bit 0
  CHECK(ev(b, {0, 3}) == 0);
}

TEST_CASE("bexp and its auxiliary") {
  NamedTerm fx = mk_bexp_aux();
  CHECK(ev(fx, {5, 5, 1}) == 4);  // 2^{l(5)-1}
  CHECK(ev(fx, {5, 5, 0}) == 8);
  CHECK(ev(fx, {5, 5, 3}) == 1);
  NamedTerm b = mk_bexp();
  CHECK(ev(b, {5, 0}) == 1);
  CHECK(ev(b, {5, 3}) == 8);
  CHECK(ev(b, {5, 1}) == 2);
}

TEST_CASE("BIT examples") {
  NamedTerm b = mk_BIT();
  CHECK(ev(b, {6, 1}) == 1);
  CHECK(ev(b, {6, 2}) == 1);
  CHECK(ev(b, {6, 0}) == 0);
}

TEST_CASE("mod2, s0, s1, cosg") {
  CHECK(ev(mk_mod2(), {7}) == 1);
  CHECK(ev(mk_s0(), {5}) == 10);
  CHECK(ev(mk_s1(), {5}) == 11);
  CHECK(ev(mk_cosg(), {0}) == 1);
  CHECK(ev(mk_cosg(), {3}) == 0);
}

TEST_CASE("bcount examples") {
  NamedTerm b = mk_bcount();
  CHECK(ev(b, {13}) == 3);
  CHECK(ev(b, {0}) == 0);
  CHECK(ev(b, {255}) == 8);
}

TEST_CASE("crn copy-under-leading-1 instance") {
  auto crn = stdlib_lookup("crn-copy");
  REQUIRE(crn);
  CHECK(ev(*crn, {0}) == 1);
  CHECK(ev(*crn, {5}) == 13);
  CHECK(ev(*crn, {2}) == 6);
}

TEST_CASE("crn rejects non-boolean steps") {
  NamedTerm g{"g", t_const1(0), [](const std::vector<Value>&) { return Value(1); },
              nullptr, {}};
  NamedTerm bad{"double", t_add(t_proj(1, 1), t_proj(1, 1)),
                [](const std::vector<Value>& a) { return a[0] * 2; }, nullptr, {}};
  CHECK_THROWS_AS(mk_crn(g, bad, bad), TermError);
}

TEST_CASE("bounded quantifier examples") {
  // R(z,y) = [z = 2]
  NamedTerm R{"is-two", t_eq(t_proj(1, 2), t_add(t_const1(2), t_const1(2))),
              [](const std::vector<Value>& a) { return Value(a[0] == 2 ? 1 : 0); },
              nullptr, {}};
  NamedTerm ex = mk_bounded_exists(R);
  CHECK(ev(ex, {7, 0}) == 1);   // z ranges over 0..3
  CHECK(ev(ex, {1, 0}) == 0);   // z ranges over 0..1
  NamedTerm Rfalse{"never", t_const0(2),
                   [](const std::vector<Value>&) { return Value(0); }, nullptr, {}};
  CHECK(ev(mk_bounded_exists(Rfalse), {7, 0}) == 0);
  NamedTerm Rtrue{"always", t_const1(2),
                  [](const std::vector<Value>&) { return Value(1); }, nullptr, {}};
  CHECK(ev(mk_bounded_forall(Rtrue), {7, 0}) == 1);
  CHECK(ev(mk_bounded_forall(R), {7, 0}) == 0);
}

TEST_CASE("bounded minimum") {
  NamedTerm g{"index", t_proj(1, 2),
              [](const std::vector<Value>& a) { return a[0]; }, nullptr, {}};
  NamedTerm always{"always", t_const1(2),
                   [](const std::vector<Value>&) { return Value(1); }, nullptr, {}};
  NamedTerm geq2{"geq2", t_sg(t_sub(t_proj(1, 2), t_const1(2))),
                 [](const std::vector<Value>& a) { return Value(sg(a[0] - 1)); },
                 nullptr, {}};
  NamedTerm never{"never", t_const0(2),
                  [](const std::vector<Value>&) { return Value(0); }, nullptr, {}};
  Value x15 = 15;  // l(x) = 4
  CHECK(ev(mk_min(g, always, 1), {x15}) == 0);
  CHECK(ev(mk_min(g, geq2, 1), {x15}) == 2);
  CHECK(ev(mk_min(g, never, 1), {x15}) == 1);  // sentinel
}

TEST_CASE("every registry term matches its oracle") {
  std::mt19937_64 rng(42);
  for (const auto& nt : stdlib_registry()) {
    CheckedTerm ct = checked_under_first_mode(nt);
    unsigned p = nt.arity();
    INFO("term ", nt.name);
    // exhaustive over a small box, then random larger samples
    unsigned lim = p == 1 ? 256 : (p == 2 ? 48 : 10);
    std::vector<Value> args(p);
    std::function<void(unsigned)> rec = [&](unsigned at) {
      if (at == p) {
        if (!nt.regime_ok(args)) return;
        CHECK(eval(ct, Env(args)) == nt.oracle(args));
        return;
      }
      for (unsigned v = 0; v < lim; ++v) {
        args[at] = v;
        rec(at + 1);
      }
    };
    rec(0);
    for (int i = 0; i < 60; ++i) {
      for (auto& a : args) a = Value(rng() % 65536);
      if (!nt.regime_ok(args)) continue;
      CHECK(eval(ct, Env(args)) == nt.oracle(args));
    }
  }
}

TEST_CASE("crn agrees with the recursion oracle on random boolean triples") {
  std::mt19937_64 rng(9);
  auto bool_step = [&](unsigned which) -> NamedTerm {
    // a few boolean step functions of arity 2 (prefix, y)
    switch (which % 4) {
      case 0:
        return {"mod2p", t_sg(tapply(mk_mod2().term, {t_proj(1, 2)})),
                [](const std::vector<Value>& a) { return Value(bit_of(a[0], 0)); },
                nullptr, {}};
      case 1:
        return {"sgp", t_sg(t_proj(1, 2)),
                [](const std::vector<Value>& a) { return Value(sg(a[0])); },
                nullptr, {}};
      case 2:
        return {"zero", t_const0(2),
                [](const std::vector<Value>&) { return Value(0); }, nullptr, {}};
      default:
        return {"one", t_const1(2),
                [](const std::vector<Value>&) { return Value(1); }, nullptr, {}};
    }
  };
  for (int trial = 0; trial < 10; ++trial) {
    NamedTerm g{"gc", t_const1(1),
                [](const std::vector<Value>&) { return Value(1); }, nullptr, {}};
    NamedTerm crn = mk_crn(g, bool_step(rng()), bool_step(rng()));
    CheckedTerm ct = checked_under_first_mode(crn);
    for (unsigned x = 0; x < 300; ++x) {
      Value lhs = eval(ct, Env({x, 0}));
      Value rhs = crn.oracle({x, 0});
      CHECK(lhs == rhs);
    }
  }
}
