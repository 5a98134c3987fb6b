#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "odecirc/dsl.hpp"
#include "odecirc/nonuniform.hpp"

using namespace odecirc;

namespace {

Circuit and_buffer_circuit() {
  Circuit c;
  c.variant = Variant::AC;
  c.n_inputs = 2;
  c.k = 3;
  c.depth = 2;
  c.gates = {
      {0, 0, GateKind::InputPos, {}}, {1, 0, GateKind::InputPos, {}},
      {2, 0, GateKind::InputNeg, {}}, {3, 0, GateKind::InputNeg, {}},
      {4, 1, GateKind::Or, {0}},      {5, 1, GateKind::Or, {1}},
      {7, 2, GateKind::And, {4, 5}},
  };
  c.outputs = {7};
  return c;
}

Circuit maj3_circuit() {
  Circuit c;
  c.variant = Variant::TC;
  c.n_inputs = 3;
  c.k = 3;
  c.depth = 3;
  c.gates = {{0, 0, GateKind::InputPos, {}}, {1, 0, GateKind::InputPos, {}},
             {2, 0, GateKind::InputPos, {}}, {3, 0, GateKind::InputNeg, {}},
             {4, 0, GateKind::InputNeg, {}}, {5, 0, GateKind::InputNeg, {}},
             {6, 1, GateKind::Or, {0}},      {7, 1, GateKind::Or, {1}},
             {8, 1, GateKind::Or, {2}},      {9, 2, GateKind::And, {6}},
             {10, 2, GateKind::And, {7}},    {11, 2, GateKind::And, {8}},
             {26, 3, GateKind::Maj, {9, 10, 11}}};
  c.outputs = {26};
  return c;
}

}  // namespace

TEST_CASE("adapter answers the circ predicates of the and-buffer circuit") {
  Circuit c = and_buffer_circuit();
  CircuitFamilyAdapter a = adapter_from_circuit(c);
  CHECK(a.fixed_m == 1);
  CHECK(a.d == 2);
  // no self edges
  CHECK(a.oracles.at("C")({Value(6), Value(0), Value(0)}) == 0);
  // virtual ids: inputs 0,1 + pad 2; negs 3,4,5(pad-neg); with k=3 and
  // n_v=3 the space is 27: output at 26.
  // L0in(1, x) reads bit 1 of x
  CHECK(a.oracles.at("L0in")({Value(1), Value(2)}) == 1);
  CHECK(a.oracles.at("L0in")({Value(0), Value(2)}) == 0);
  // spot-check the edge list against the original circuit
  Value x = encode_input(*BitVector::parse("11"));
  CHECK(a.oracles.at("C")({x, Value(0), Value(6)}) == 1);   // in0 -> or4
  CHECK(a.oracles.at("C")({x, Value(1), Value(6)}) == 0);
  CHECK(a.oracles.at("C")({x, Value(26), Value(6)}) == 0);  // no back edges
}

TEST_CASE("eval term reproduces the and-buffer circuit") {
  Circuit c = and_buffer_circuit();
  auto rep = roundtrip_exhaustive(c);
  CHECK(rep.mismatches == 0);
  CHECK(rep.rows.size() == 4);
}

TEST_CASE("Eval0 handles negated input indices") {
  Circuit c = and_buffer_circuit();
  CircuitFamilyAdapter a = adapter_from_circuit(c);
  EvalTermSet set = build_eval_term(a);
  // x = 2 (binary 10), virtual n = 3, pad gives x_enc = 2 + 4
  Value xe = encode_input(*BitVector::parse("01"));  // LSB first: value 2
  auto r0 = validate(set.levels[0], preset(Mode::ACDL).with_oracles());
  REQUIRE(r0.ok());
  // negated index of input 0 is t = n_v + 0 = 3: 1 - bit0(x) = 1
  CHECK(eval(*r0.checked, Env({Value(3), xe}, &a.oracles)) == 1);
  // negated index of input 1 is t = 4: 1 - bit1(x) = 0
  CHECK(eval(*r0.checked, Env({Value(4), xe}, &a.oracles)) == 0);
  // non-gate index evaluates to 0
  CHECK(eval(*r0.checked, Env({Value(20), xe}, &a.oracles)) == 0);
}

TEST_CASE("TC eval term reproduces strict majority") {
  Circuit c = maj3_circuit();
  auto rep = roundtrip_exhaustive(c);
  CHECK(rep.mismatches == 0);
  CHECK(rep.rows.size() == 8);
}

TEST_CASE("bcount over the majority gate counts its predecessors") {
  Circuit c = maj3_circuit();
  CircuitFamilyAdapter a = adapter_from_circuit(c);
  // v0(i,t,x) = sg(C(x,i,t)) summed over i at the Maj gate t = 63 (virtual
  // space 4^3, top id) counts the three predecessors.
  EvalTermSet set = build_eval_term_tc(a);
  Value xe = encode_input(*BitVector::parse("110"));
  // count via the oracle directly
  uint64_t space = 64;
  int preds = 0;
  for (uint64_t i = 0; i < space; ++i)
    if (a.oracles.at("C")({xe, Value(i), Value(space - 1)}) == 1) ++preds;
  CHECK(preds == 3);
}

TEST_CASE("index space too small raises") {
  Circuit c;  // no inputs: nothing to index the family by
  c.n_inputs = 0;
  CHECK_THROWS_AS(adapter_from_circuit(c), NonuniformError);
}

TEST_CASE("variant mismatch raises") {
  Circuit c = and_buffer_circuit();
  CircuitFamilyAdapter a = adapter_from_circuit(c);
  CHECK_THROWS_AS(build_eval_term_tc(a), NonuniformError);
}

TEST_CASE("round trips over random circuits, both variants") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    RandomCircuitSpec spec;
    spec.n = 2 + rng() % 4;
    spec.depth = 1 + rng() % 4;
    spec.max_level_width = 4;
    spec.variant = i % 2 ? Variant::TC : Variant::AC;
    Circuit c = random_circuit(rng, spec);
    REQUIRE(validate_normal_form(c).empty());
    auto rep = roundtrip_exhaustive(c);
    INFO("sample ", i, " n=", spec.n, " d=", c.depth);
    CHECK(rep.mismatches == 0);
  }
}

TEST_CASE("a dropped edge is caught by the round trip") {
  std::mt19937_64 rng(33);
  int caught = 0, trials = 0;
  for (int i = 0; i < 12; ++i) {
    RandomCircuitSpec spec;
    spec.n = 3;
    spec.depth = 2;
    spec.max_level_width = 3;
    spec.variant = Variant::AC;
    Circuit c = random_circuit(rng, spec);
    CircuitFamilyAdapter a = adapter_from_circuit(c);
    // drop one edge into an output gate
    CircuitFamilyAdapter corrupted = a;
    Value x0 = encode_input(BitVector::from_value(0, c.n_inputs));
    uint64_t space = 1;
    for (unsigned j = 0; j < a.k; ++j) space *= (c.n_inputs + 1);
    std::pair<uint64_t, uint64_t> victim{0, 0};
    bool found = false;
    for (uint64_t b = space - c.outputs.size(); b < space && !found; ++b)
      for (uint64_t p = 0; p < space && !found; ++p)
        if (a.oracles.at("C")({x0, Value(p), Value(b)}) == 1) {
          victim = {p, b};
          found = true;
        }
    REQUIRE(found);
    auto base = a.oracles.at("C");
    corrupted.oracles["C"] = [base, victim](const std::vector<Value>& args) -> Value {
      if (args[1] == victim.first && args[2] == victim.second) return 0;
      return base(args);
    };
    std::vector<BitVector> inputs;
    for (uint64_t v = 0; v < (1ull << c.n_inputs); ++v)
      inputs.push_back(BitVector::from_value(Value(v), c.n_inputs));
    auto rep = roundtrip_check_with(c, corrupted, inputs);
    ++trials;
    if (rep.mismatches > 0) ++caught;
  }
  CHECK(caught >= (trials * 2) / 3);
}

TEST_CASE("eval levels depend only on predicates at or below them") {
  Circuit c = and_buffer_circuit();
  CircuitFamilyAdapter a = adapter_from_circuit(c);
  // wrap each level predicate with a counter
  auto counters = std::make_shared<std::map<std::string, int>>();
  CircuitFamilyAdapter traced = a;
  for (auto& [name, fn] : traced.oracles) {
    auto base = fn;
    std::string captured = name;
    fn = [counters, base, captured](const std::vector<Value>& args) {
      ++(*counters)[captured];
      return base(args);
    };
  }
  EvalTermSet set = build_eval_term(a);
  Value xe = encode_input(*BitVector::parse("11"));
  auto r1 = validate(set.levels[1], preset(Mode::ACDL).with_oracles());
  REQUIRE(r1.ok());
  counters->clear();
  eval(*r1.checked, Env({Value(4), xe}, &traced.oracles));
  CHECK((*counters)["L2"] == 0);
  CHECK((*counters)["L1"] > 0);
}

TEST_CASE("uniform stand-in: the low-bits family as closed formulas") {
  // Family: C_n outputs the low floor(n/2) bits of its input. Gate layout in
  // the l(x)^2 index space: input j feeds the Or buffer at 2n+j, which feeds
  // the And output at n^2-m+j.
  //
  //   m(x)      = l(x) div 2
  //   L0in(a,x) = [a < l(x)] and BIT(x, a)
  //   L0neg     = [l(x) <= a < 2l(x)]
  //   L1(a,x)   = [2l(x) <= a < 2l(x)+m]
  //   L2(a,x)   = [a >= l(x)^2 - m]
  //   C(x,a,b)  = [a < m and b = 2l(x)+a] or [a = 2l(x)+j and b = n^2-m+j]
  unsigned k = 2;
  TermPtr BIT = mk_BIT().term;
  auto P = [](unsigned i, unsigned p) { return t_proj(i, p); };
  auto num = [](unsigned q, unsigned v) {
    TermPtr t = t_const0(q);
    for (unsigned i = 0; i < v; ++i) t = t_add(t, t_const1(q));
    return t;
  };

  // scope (a, x)
  TermPtr lx2 = t_len(P(2, 2));
  TermPtr m2 = t_div2(lx2);
  TermPtr n2sq = t_len(index_space_term(k, 2, 2));
  auto lt = [](TermPtr a, TermPtr b) { return t_sg(t_sub(b, a)); };  // [a < b]
  TermPtr l0in = b_and(lt(P(1, 2), lx2), tapply(BIT, {P(2, 2), P(1, 2)}));
  TermPtr l0neg = b_and(t_geq(P(1, 2), lx2),
                        lt(P(1, 2), t_add(lx2, lx2)));
  TermPtr l1 = b_and(t_geq(P(1, 2), t_add(lx2, lx2)),
                     lt(P(1, 2), t_add(t_add(lx2, lx2), m2)));
  TermPtr l2 = t_geq(P(1, 2), t_sub(n2sq, m2));

  // scope (x, a, b) per the oracle's argument order C(x,a,b)
  TermPtr lx3 = t_len(P(1, 3));
  TermPtr m3 = t_div2(lx3);
  TermPtr n3sq = t_len(index_space_term(k, 3, 1));
  TermPtr two_lx3 = t_add(lx3, lx3);
  auto lt3 = lt;
  TermPtr first = b_and(lt3(P(2, 3), m3),
                        t_eq(P(3, 3), t_add(two_lx3, P(2, 3))));
  TermPtr second =
      b_and(b_and(t_geq(P(2, 3), two_lx3), lt3(P(2, 3), t_add(two_lx3, m3))),
            t_eq(P(3, 3), t_add(t_sub(n3sq, m3), t_sub(P(2, 3), two_lx3))));
  TermPtr conn = b_or(first, second);

  (void)num;

  CircuitFamilyAdapter fam;
  fam.variant = Variant::AC;
  fam.k = k;
  fam.d = 2;
  EvalTermSet set = [&] {
    CircuitFamilyAdapter probe = fam;
    // oracle stubs so the builder can validate; replaced by terms below
    return build_eval_term(probe);
  }();

  // replace the oracles with the closed formulas and validate under plain ACDL
  TermPtr mterm = t_div2(t_len(P(1, 1)));
  TermPtr uniform = substitute_oracles(
      set.entry.term(), {{"C", conn},
                         {"L0in", l0in},
                         {"L0neg", l0neg},
                         {"L1", l1},
                         {"L2", l2},
                         {"m", mterm}});
  auto r = validate(uniform, Mode::ACDL);
  for (const auto& d : r.diagnostics)
    if (d.severity == Severity::Error) INFO(format_diagnostic(d));
  REQUIRE(r.ok());

  // full-length inputs: top bit set, so l(x) = n without padding
  for (unsigned n : {4u, 6u}) {
    for (int t = 0; t < 8; ++t) {
      Value x = (Value(1) << (n - 1)) + Value(std::mt19937_64(100 + t)() % (1ull << (n - 1)));
      unsigned m = n / 2;
      Value got = eval(*r.checked, Env({x}));
      Value want = 0;
      for (unsigned j = 0; j < m; ++j)
        if (bit_of(x, j)) want += pow2(m - 1 - j);  // accumulator packs MSB first
      CHECK(got == want);
    }
  }
}
