#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "odecirc/compile.hpp"
#include "odecirc/eval.hpp"
#include "odecirc/stdterms.hpp"

using namespace odecirc;

namespace {

CheckedTerm check_first(const NamedTerm& nt) {
  auto r = validate(nt.term, nt.modes.front());
  REQUIRE(r.ok());
  return *r.checked;
}

void expect_equivalence(const NamedTerm& nt, unsigned width, int samples,
                        std::mt19937_64& rng) {
  CheckedTerm ct = check_first(nt);
  WidthPlan plan = infer_widths(ct, std::vector<unsigned>(ct.arity(), width));
  Circuit c = compile(ct, plan);
  auto diags = validate_normal_form(c);
  for (const auto& d : diags) INFO(format_diagnostic(d));
  REQUIRE(diags.empty());
  for (int s = 0; s < samples; ++s) {
    std::vector<Value> args(ct.arity());
    for (auto& a : args) a = Value(rng() % (1ull << width));
    if (!nt.regime_ok(args)) continue;
    Value want = eval(ct, Env(args));
    BitVector out = simulate(c, pack_args(c, plan, args));
    CHECK(unpack_output(plan, out) == want);
  }
}

}  // namespace

TEST_CASE("compile shift: simulation equals evaluation") {
  std::mt19937_64 rng(3);
  NamedTerm s = mk_shift();
  CheckedTerm ct = check_first(s);
  WidthPlan plan = infer_widths(ct, {4, 4});
  Circuit c = compile(ct, plan);
  REQUIRE(validate_normal_form(c).empty());
  BitVector out = simulate(c, pack_args(c, plan, {6, 5}));
  CHECK(unpack_output(plan, out) == 40);
  expect_equivalence(s, 4, 40, rng);
}

TEST_CASE("compile msp example") {
  NamedTerm s = mk_msp();
  CheckedTerm ct = check_first(s);
  WidthPlan plan = infer_widths(ct, {4, 8});
  Circuit c = compile(ct, plan);
  BitVector out = simulate(c, pack_args(c, plan, {3, 20}));
  CHECK(unpack_output(plan, out) == 5);
}

TEST_CASE("compile a constant term") {
  auto r = validate(t_const1(0), Mode::ACDL);
  REQUIRE(r.ok());
  WidthPlan plan = infer_widths(*r.checked, {});
  Circuit c = compile(*r.checked, plan);
  REQUIRE(validate_normal_form(c).empty());
  CHECK(stats(c).depth <= 2);
  BitVector in;
  in.bits.assign(c.n_inputs, false);
  CHECK(unpack_output(plan, simulate(c, in)) == 1);

  auto r0 = validate(t_const0(0), Mode::ACDL);
  WidthPlan p0 = infer_widths(*r0.checked, {});
  Circuit c0 = compile(*r0.checked, p0);
  REQUIRE(validate_normal_form(c0).empty());
  CHECK(unpack_output(p0, simulate(c0, in)) == 0);
}

TEST_CASE("negative intermediates: subtraction and signed division") {
  // (x - y) and div2(x - y) on signed results
  TermPtr sub = t_sub(t_proj(1, 2), t_proj(2, 2));
  TermPtr half = t_div2(sub);
  for (TermPtr t : {sub, half}) {
    auto r = validate(t, Mode::ACDL);
    REQUIRE(r.ok());
    WidthPlan plan = infer_widths(*r.checked, {5, 5});
    Circuit c = compile(*r.checked, plan);
    for (int x = 0; x < 20; ++x)
      for (int y = 0; y < 20; ++y) {
        Value want = eval(*r.checked, Env({x, y}));
        CHECK(unpack_output(plan, simulate(c, pack_args(c, plan, {x, y}))) ==
              want);
      }
  }
}

TEST_CASE("smash width plan bound") {
  NamedTerm s = mk_smash();
  CheckedTerm ct = check_first(s);
  WidthPlan plan = infer_widths(ct, {4, 4});
  CHECK(plan.output_width() >= 17);
  // Times never shrinks below operand widths; Div2 never grows
  TermPtr d2 = t_div2(t_proj(1, 1));
  auto r = validate(d2, Mode::ACDL);
  WidthPlan p2 = infer_widths(*r.checked, {8});
  CHECK(p2.output_width() == 8);
}

TEST_CASE("a narrowed plan is rejected") {
  NamedTerm s = mk_smash();
  CheckedTerm ct = check_first(s);
  WidthPlan plan = infer_widths(ct, {4, 4});
  WidthPlan bad = plan;
  for (auto& [k, w] : bad.widths) w = 1;
  CHECK_THROWS_AS(compile(ct, bad), CompileError);
}

TEST_CASE("TC-only terms refuse AC lowering") {
  NamedTerm bc = mk_bcount();
  CheckedTerm ct = check_first(bc);
  WidthPlan plan = infer_widths(ct, {4});
  CHECK_THROWS_AS(compile(ct, plan, Variant::AC), CompileError);
  Circuit c = compile(ct, plan);  // auto-selects TC
  CHECK(c.variant == Variant::TC);

  TermPtr times = t_times(t_proj(1, 2), t_proj(2, 2));
  auto r = validate(times, Mode::TCDL);
  WidthPlan tp = infer_widths(*r.checked, {4, 4});
  CHECK_THROWS_AS(compile(*r.checked, tp, Variant::AC), CompileError);
}

TEST_CASE("multiplication compiles under TC") {
  TermPtr times = t_times(t_proj(1, 2), t_proj(2, 2));
  auto r = validate(times, Mode::TCDL);
  REQUIRE(r.ok());
  WidthPlan plan = infer_widths(*r.checked, {5, 5});
  Circuit c = compile(*r.checked, plan);
  REQUIRE(validate_normal_form(c).empty());
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    Value a = Value(rng() % 32), b = Value(rng() % 32);
    CHECK(unpack_output(plan, simulate(c, pack_args(c, plan, {a, b}))) == a * b);
  }
}

TEST_CASE("oracle nodes cannot be compiled") {
  TermPtr t = t_oracle("#", 2);
  auto r = validate(t, Mode::ACDL_SMASH);
  REQUIRE(r.ok());
  CHECK_THROWS_AS(infer_widths(*r.checked, {4, 4}), CompileError);
}

TEST_CASE("equivalence across the lighter stdlib terms") {
  std::mt19937_64 rng(21);
  for (const char* name : {"shift", "smash", "msp", "if", "cond", "bit",
                           "mod2", "s0", "s1", "cosg"}) {
    auto nt = stdlib_lookup(name);
    REQUIRE(nt);
    INFO("term ", name);
    expect_equivalence(*nt, 4, 25, rng);
    expect_equivalence(*nt, 8, 25, rng);
  }
}

TEST_CASE("equivalence for the schema-heavy terms") {
  std::mt19937_64 rng(22);
  for (const char* name : {"bexp", "bexp-aux", "BIT", "bcount"}) {
    auto nt = stdlib_lookup(name);
    REQUIRE(nt);
    INFO("term ", name);
    expect_equivalence(*nt, 4, 20, rng);
  }
}

TEST_CASE("depth is a function of the term, not the width") {
  for (const char* name : {"shift", "smash", "msp", "if", "bit", "bcount"}) {
    auto nt = stdlib_lookup(name);
    REQUIRE(nt);
    CheckedTerm ct = check_first(*nt);
    auto profile = depth_profile(ct, {4, 8, 16});
    INFO("term ", name);
    CHECK(profile[0].depth == profile[1].depth);
    CHECK(profile[1].depth == profile[2].depth);
    CHECK(profile[0].size <= profile[1].size);
    CHECK(profile[1].size <= profile[2].size);
  }
}

TEST_CASE("ODE4 lowering in both directions") {
  // 2^{l(x)} via ode4 plus, msp via ode4 minus (remarks 7 and 8)
  TermPtr p2 = t_ode4(t_const1(1), t_const1(1), Ode4Dir::Plus);
  TermPtr msp4 = t_ode4(t_proj(1, 1), t_const1(1), Ode4Dir::Minus);
  for (auto& [t, probe, want] :
       std::vector<std::tuple<TermPtr, std::vector<Value>, Value>>{
           {p2, {5, 0}, 8}, {msp4, {3, 20}, 5}}) {
    auto r = validate(t, Mode::ACDL_ODE4);
    REQUIRE(r.ok());
    WidthPlan plan = infer_widths(*r.checked, {5, 6});
    Circuit c = compile(*r.checked, plan);
    CHECK(unpack_output(plan, simulate(c, pack_args(c, plan, probe))) == want);
    CHECK(eval(*r.checked, Env(probe)) == want);
  }
}

TEST_CASE("ODE1* lowering handles stacked contributions") {
  // k = 0 everywhere turns ODE1* into pure counting of h hits
  NamedTerm mod2 = mk_mod2();
  TermPtr h = tapply(mod2.term, {t_add(t_proj(1, 1), t_const1(1))});
  TermPtr t = t_ode1_star(t_const1(0), h, t_const0(1));
  auto r = validate(t, Mode::TCDL_SMASH);
  REQUIRE(r.ok());
  WidthPlan plan = infer_widths(*r.checked, {6});
  Circuit c = compile(*r.checked, plan);
  for (unsigned x = 0; x < 64; ++x) {
    Value want = eval(*r.checked, Env({x}));
    CHECK(unpack_output(plan, simulate(c, pack_args(c, plan, {x}))) == want);
  }
}
