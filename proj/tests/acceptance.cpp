// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the full property campaigns, so expect a few minutes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "odecirc/compile.hpp"
#include "odecirc/dsl.hpp"
#include "odecirc/eval.hpp"
#include "odecirc/nonuniform.hpp"
#include "odecirc/polyexpr.hpp"
#include "odecirc/stdterms.hpp"

using namespace odecirc;

namespace {

struct Outcome {
  bool pass = true;
  long checks = 0;
  long failures = 0;
  std::string note;

  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      pass = false;
      if (note.size() < 600) note += (note.empty() ? "" : "; ") + what;
    }
  }
};

uint64_t rng_below(std::mt19937_64& rng, uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

// ---------------------------------------------------------------------------
// 1. Degree calculus examples

Outcome criterion1() {
  Outcome o;
  auto P = p_add(p_mul(p_mul(p_const(3), p_var("x1")), p_sg(p_var("x3"))),
                 p_mul(p_mul(p_const(2), p_var("x2")), p_var("x1")));
  o.require(degree(P, {"x1"}) == 1, "deg(x1,P')");
  o.require(degree(P, {"x3"}) == 0, "deg(x3,P')");
  o.require(degree(P, {"x1", "x2", "x3"}) == 2, "deg(xs,P')");

  auto cube = p_mul(p_mul(p_var("x2"), p_var("x2")), p_var("x2"));
  auto Q = p_add(p_mul(p_var("x1"), p_sg(p_mul(p_sub(p_var("x1"), p_var("x3")),
                                               p_var("x2")))),
                 cube);
  o.require(is_essentially_linear(Q, {"x1"}), "linear in x1");
  o.require(is_essentially_constant(Q, {"x3"}), "constant in x3");
  o.require(!is_essentially_linear(Q, {"x2"}), "not linear in x2");
  return o;
}

// ---------------------------------------------------------------------------
// 2. Closed form vs step oracle over randomized schema instances

struct Instance {
  std::string family;
  CheckedTerm term;
};

std::vector<TermPtr> g_pool() {
  TermPtr mod2 = mk_mod2().term;
  return {t_proj(1, 2),
          t_proj(2, 2),
          t_const0(2),
          t_const1(2),
          t_add(t_proj(1, 2), t_proj(2, 2)),
          t_len(t_proj(1, 2)),
          t_div2(t_proj(2, 2)),
          tapply(mod2, {t_proj(1, 2)})};
}

std::vector<TermPtr> h_pool() {
  TermPtr mod2 = mk_mod2().term;
  auto m = [&](TermPtr t) { return t_sg(tapply(mod2, {std::move(t)})); };
  return {t_const0(3),
          t_const1(3),
          m(t_proj(1, 3)),
          m(t_add(t_proj(1, 3), t_const1(3))),
          m(t_proj(2, 3)),
          m(t_add(t_proj(1, 3), t_proj(3, 3))),
          t_eq(t_len(t_add(t_proj(1, 3), t_const1(3))), t_len(t_proj(2, 3))),
          b_not(m(t_proj(1, 3)))};
}

std::vector<TermPtr> k_pool() {
  TermPtr mod2 = mk_mod2().term;
  return {t_proj(1, 2), t_proj(2, 2),        t_const0(2),
          t_const1(2),  t_len(t_proj(1, 2)), tapply(mod2, {t_proj(2, 2)})};
}

std::vector<Instance> make_instances(std::mt19937_64& rng, int per_family) {
  auto gs = g_pool();
  auto hs = h_pool();
  auto ks = k_pool();
  auto pick = [&](const std::vector<TermPtr>& pool) {
    return pool[rng() % pool.size()];
  };
  std::vector<Instance> out;
  auto add = [&](const std::string& fam, TermPtr t, Mode m) {
    auto r = validate(t, m);
    if (!r.ok()) throw std::logic_error("instance failed validation: " + fam);
    out.push_back({fam, *r.checked});
  };
  for (int i = 0; i < per_family; ++i) {
    add("ode1", t_ode1(pick(gs), pick(hs)), Mode::ACDL);
    add("ode2", t_ode2(pick(gs), pick(hs), pick(ks)), Mode::ACDL);
    add("ode2*", t_ode2_star(pick(gs), pick(hs), pick(ks)), Mode::TCDL_STAR);
    add("ode3", t_ode3(pick(gs)), Mode::ACDL);
    add("ode4+", t_ode4(pick(gs), pick(ks), Ode4Dir::Plus), Mode::ACDL_ODE4);
    add("ode4-", t_ode4(pick(gs), pick(ks), Ode4Dir::Minus), Mode::ACDL_ODE4);
    add("ode1*", t_ode1_star(pick(gs), pick(hs), pick(hs)), Mode::TCDL_SMASH);
  }
  return out;
}

Outcome criterion2() {
  Outcome o;
  std::mt19937_64 rng(0x0de1);
  const unsigned long xmax = 4096;
  auto instances = make_instances(rng, 29);  // 7 families x 29 = 203 instances
  long violating_pairs = 0;
  for (const auto& inst : instances) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Value> ys{Value(rng_below(rng, 1024)),
                            Value(rng_below(rng, 1024))};
      // probe for schema side-condition violations at the largest x
      bool violates = false;
      int probe_code = 0;
      try {
        eval(inst.term, Env({Value(xmax), ys[0], ys[1]}));
      } catch (const EvalError& e) {
        violates = true;
        probe_code = static_cast<int>(e.code);
      }
      if (violates) {
        ++violating_pairs;
        // the step oracle must reject the same instance the same way
        try {
          step_oracle(inst.term, Value(xmax), Env(ys), xmax);
          o.require(false, inst.family + " step oracle missed a violation");
        } catch (const EvalError& e) {
          o.require(static_cast<int>(e.code) == probe_code,
                    inst.family + " mismatched violation codes");
        }
        continue;
      }
      auto sweep = step_oracle_sweep(inst.term, xmax, Env(ys));
      EvalSession session;
      bool all_eq = true;
      for (unsigned long x = 0; x <= xmax; ++x) {
        Value lhs = session.eval(inst.term, {Value(x), ys[0], ys[1]});
        if (lhs != sweep[x]) {
          all_eq = false;
          break;
        }
      }
      o.require(all_eq, inst.family + " closed form != step iteration");
    }
  }
  o.note = std::to_string(instances.size()) + " instances, " +
           std::to_string(violating_pairs) + " violating pairs (errors agreed)" +
           (o.failures ? "; " + o.note : "");
  return o;
}

// ---------------------------------------------------------------------------
// 3. Stdlib terms against their arithmetic oracles

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(0x57d11b);
  const std::vector<std::string> names = {
      "BIT",  "bit",  "msp",  "bexp", "smash", "shift",
      "if",   "cond", "mod2", "s0",   "s1",    "bounded-exists",
      "bounded-forall", "min", "bcount"};
  auto run_term = [&](const NamedTerm& nt) {
    auto r = validate(nt.term, nt.modes.front());
    if (!r.ok()) {
      o.require(false, nt.name + " failed validation");
      return;
    }
    EvalSession session;
    unsigned p = nt.arity();
    auto check_args = [&](const std::vector<Value>& args) {
      if (!nt.regime_ok(args)) return;
      bool ok = session.eval(*r.checked, args) == nt.oracle(args);
      ++o.checks;
      if (!ok) o.require(false, nt.name + " oracle mismatch");
    };
    if (p == 1) {
      for (unsigned v = 0; v < 1024; ++v) check_args({Value(v)});
    } else if (p == 2) {
      if (nt.name == "bexp") {
        for (unsigned x = 0; x < 1024; ++x)
          for (unsigned i = 0; i <= len(Value(x)); ++i)
            check_args({Value(x), Value(i)});
      } else {
        for (unsigned x = 0; x < 1024; ++x)
          for (unsigned y = 0; y < 1024; ++y) check_args({Value(x), Value(y)});
      }
    } else {
      for (int s = 0; s < 10000; ++s) {
        std::vector<Value> args(p);
        for (auto& a : args) a = Value(rng_below(rng, 1024));
        check_args(args);
      }
    }
    // random larger samples
    for (int s = 0; s < 10000; ++s) {
      std::vector<Value> args(p);
      for (auto& a : args) a = Value(1024 + rng_below(rng, 1u << 20));
      if (nt.name == "bexp") args[1] = Value(rng_below(rng, len(args[0]) + 1));
      check_args(args);
    }
  };

  for (const auto& name : names) {
    if (name == "bounded-exists") {
      run_term(*stdlib_lookup("exists-bit"));
    } else if (name == "bounded-forall") {
      run_term(*stdlib_lookup("forall-bit"));
    } else if (name == "min") {
      run_term(*stdlib_lookup("min-geq2"));
    } else {
      auto nt = stdlib_lookup(name);
      if (!nt) {
        o.require(false, "missing stdlib entry " + name);
        continue;
      }
      run_term(*nt);
    }
  }

  // CRN against the recursion oracle: 10 random boolean triples, all x < 2^12
  {
    auto bool_steps = [&](unsigned which) -> NamedTerm {
      TermPtr mod2 = mk_mod2().term;
      switch (which % 5) {
        case 0:
          return {"b0", t_sg(tapply(mod2, {t_proj(1, 2)})),
                  [](const std::vector<Value>& a) { return Value(bit_of(a[0], 0)); },
                  nullptr, {}};
        case 1:
          return {"b1", t_sg(t_proj(1, 2)),
                  [](const std::vector<Value>& a) { return Value(sg(a[0])); },
                  nullptr, {}};
        case 2:
          return {"b2", t_sg(tapply(mod2, {t_add(t_proj(1, 2), t_proj(2, 2))})),
                  [](const std::vector<Value>& a) {
                    return Value(bit_of(a[0] + a[1], 0));
                  },
                  nullptr, {}};
        case 3:
          return {"b3", t_const0(2),
                  [](const std::vector<Value>&) { return Value(0); }, nullptr, {}};
        default:
          return {"b4", t_const1(2),
                  [](const std::vector<Value>&) { return Value(1); }, nullptr, {}};
      }
    };
    for (int trial = 0; trial < 10; ++trial) {
      NamedTerm g{"g", t_len(t_proj(1, 1)),
                  [](const std::vector<Value>& a) { return Value(len(a[0])); },
                  nullptr, {}};
      NamedTerm crn = mk_crn(g, bool_steps(rng()), bool_steps(rng()));
      auto r = validate(crn.term, crn.modes.front());
      if (!r.ok()) {
        o.require(false, "crn instance failed validation");
        continue;
      }
      EvalSession session;
      Value y = Value(rng_below(rng, 1024));
      bool ok = true;
      for (unsigned x = 0; x < 4096; ++x) {
        if (session.eval(*r.checked, {Value(x), y}) != crn.oracle({Value(x), y})) {
          ok = false;
          break;
        }
      }
      o.require(ok, "crn trial " + std::to_string(trial));
    }
  }
  return o;
}

// ---------------------------------------------------------------------------
// 4. The AC0 / FTC0 dividing line on the bcount configuration

Outcome criterion4() {
  Outcome o;
  // bcount configuration: g = bit0(y), h = BIT(y, l(t+1)), k = 0
  TermPtr mod2 = mk_mod2().term;
  TermPtr BIT = mk_BIT().term;
  TermPtr g = tapply(mod2, {t_proj(1, 1)});
  TermPtr h = tapply(BIT, {t_proj(2, 2), t_len(t_add(t_proj(1, 2), t_const1(2)))});
  TermPtr k = t_const0(1);

  TermPtr as_ode2 = t_ode2(g, h, k);
  TermPtr as_star = t_ode2_star(g, h, k);

  for (Mode m : {Mode::ACDL, Mode::TCDL}) {
    auto r = validate(as_ode2, m);
    o.require(r.ok(), "non-star form should validate statically");
    if (!r.ok()) continue;
    try {
      eval(*r.checked, Env({13, 13}));
      o.require(false, "non-star evaluation must raise");
    } catch (const EvalError& e) {
      o.require(e.code == EvalCode::KZeroWithHOne, "wrong violation code");
    }
    // with h never hitting 1 the k = 0 case is legal (f = g)
    Value quiet = eval(*r.checked, Env({13, 0}));
    o.require(quiet == 0, "k=0 with h=0 must reduce to g");
    // the star node is not available in these modes
    o.require(!validate(as_star, m).ok(), "star schema must be rejected");
  }

  auto rs = validate(as_star, Mode::TCDL_STAR);
  o.require(rs.ok(), "star form under tcdl-star");
  if (rs.ok()) {
    EvalSession session;
    for (unsigned v : {13u, 0u, 255u, 1000u}) {
      Value want = 0;
      for (unsigned b = 0; b < len(Value(v)); ++b) want += bit_of(Value(v), b);
      o.require(session.eval(*rs.checked, {Value(v), Value(v)}) == want,
                "popcount value at " + std::to_string(v));
    }
  }
  return o;
}

// ---------------------------------------------------------------------------
// 5. Compiler: equivalence, depth constancy, polynomial size

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(0xc0de);
  for (const auto& nt : stdlib_registry()) {
    auto r = validate(nt.term, nt.modes.front());
    if (!r.ok()) {
      o.require(false, nt.name + " failed validation");
      continue;
    }
    const CheckedTerm& ct = *r.checked;
    std::vector<unsigned> depths;
    std::vector<uint64_t> sizes;
    for (unsigned w : {4u, 8u, 16u, 32u}) {
      WidthPlan plan = infer_widths(ct, std::vector<unsigned>(ct.arity(), w));
      Circuit c = compile(ct, plan);
      auto s = stats(c);
      depths.push_back(s.depth);
      sizes.push_back(s.size);
      if (w == 32) continue;  // equivalence asserted at 4/8/16
      Simulator sim(c);
      EvalSession session;
      int done = 0;
      for (int attempts = 0; attempts < 2000 && done < 100; ++attempts) {
        std::vector<Value> args(ct.arity());
        for (size_t i = 0; i < args.size(); ++i) {
          args[i] = Value(rng_below(rng, 1ull << w));
          if (i > 0 && rng() % 2)
            args[i] = Value(rng_below(rng, len(args[0]) + 2));
        }
        if (!nt.regime_ok(args)) continue;
        ++done;
        Value want = session.eval(ct, args);
        Value got = unpack_output(plan, sim.run(pack_args(c, plan, args)));
        if (want != got)
          o.require(false, nt.name + " simulation mismatch at width " +
                               std::to_string(w));
        ++o.checks;
      }
      o.require(done == 100, nt.name + " could not draw 100 in-range inputs");
    }
    o.require(depths[0] == depths[1] && depths[1] == depths[2] &&
                  depths[2] == depths[3],
              nt.name + " depth varies with width");
    // fit size = c * W^k at {4,8}; assert 16/32 within factor 2
    double ratio = static_cast<double>(sizes[1]) / static_cast<double>(sizes[0]);
    double pred16 = static_cast<double>(sizes[0]) * ratio * ratio;
    double pred32 = pred16 * ratio;
    o.require(static_cast<double>(sizes[2]) <= 2.0 * pred16,
              nt.name + " size at 16 outside the fitted polynomial");
    o.require(static_cast<double>(sizes[3]) <= 2.0 * pred32,
              nt.name + " size at 32 outside the fitted polynomial");
  }
  return o;
}

// ---------------------------------------------------------------------------
// 6. Non-uniform round trip and its fault-injection control

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(0x6eed);
  for (Variant variant : {Variant::AC, Variant::TC}) {
    for (int i = 0; i < 50; ++i) {
      RandomCircuitSpec spec;
      spec.variant = variant;
      if (i < 46) {
        spec.n = 3 + rng() % 5;  // 3..7
        spec.depth = 1 + rng() % 5;
        spec.max_level_width = 4;
      } else if (i < 49) {
        spec.n = 8;
        spec.depth = 1 + rng() % 3;
        spec.max_level_width = 3;
      } else {
        spec.n = 10;
        spec.depth = 1 + rng() % 2;
        spec.max_level_width = 3;
      }
      Circuit c = random_circuit(rng, spec);
      o.require(validate_normal_form(c).empty(), "random circuit invalid");
      o.require(c.depth <= 6, "depth bound");
      o.require(stats(c).size <= static_cast<uint64_t>(spec.n) * spec.n * spec.n +
                                     2ull * spec.n,
                "size bound");
      auto rep = roundtrip_exhaustive(c);
      o.require(rep.mismatches == 0,
                std::string(variant == Variant::AC ? "AC" : "TC") +
                    " roundtrip mismatches on sample " + std::to_string(i));
    }
  }

  // control: dropping one live edge from the adapter must surface
  int caught = 0, trials = 0;
  for (int i = 0; i < 20; ++i) {
    RandomCircuitSpec spec;
    spec.variant = i % 2 ? Variant::TC : Variant::AC;
    spec.n = 3 + rng() % 3;
    spec.depth = 1 + rng() % 3;
    spec.max_level_width = 3;
    spec.max_fanin = 2;
    Circuit c = random_circuit(rng, spec);
    CircuitFamilyAdapter a = adapter_from_circuit(c);

    std::vector<std::pair<uint64_t, uint64_t>> edges;
    uint64_t space = 1;
    for (unsigned j = 0; j < a.k; ++j) space *= c.n_inputs + 1;
    Value x0 = encode_input(BitVector::from_value(Value(0), c.n_inputs));
    for (uint64_t bgate = 0; bgate < space; ++bgate)
      for (uint64_t p = 0; p < space; ++p)
        if (a.oracles.at("C")({x0, Value(p), Value(bgate)}) == 1)
          edges.push_back({p, bgate});
    if (edges.empty()) continue;
    auto victim = edges[rng() % edges.size()];

    CircuitFamilyAdapter corrupted = a;
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
  o.require(trials >= 10, "control generated too few trials");
  o.require(caught * 10 >= trials * 9,
            "fault injection caught " + std::to_string(caught) + "/" +
                std::to_string(trials));
  o.note = "fault control " + std::to_string(caught) + "/" +
           std::to_string(trials) + (o.failures ? "; " + o.note : "");
  return o;
}

// ---------------------------------------------------------------------------
// 7. Mode preset accept/reject table

Outcome criterion7() {
  Outcome o;
  TermPtr shift = mk_shift().term;                                   // ODE1
  TermPtr smash = mk_smash().term;                                   // ODE2, h=0
  TermPtr appender = t_ode2(t_const1(0), t_const1(1), t_const1(0));  // ODE2, h=1
  TermPtr msp = mk_msp().term;                                       // ODE3
  TermPtr ode4p = t_ode4(t_const1(1), t_const1(1), Ode4Dir::Plus);
  TermPtr times = t_times(t_proj(1, 2), t_proj(2, 2));
  TermPtr star2 = mk_bcount().term;                                  // ODE2*
  TermPtr star1 = t_ode1_star(t_const1(0), t_const1(1), t_const1(1));
  TermPtr smash_oracle = t_oracle("#", 2);

  struct Row {
    Mode mode;
    std::vector<std::pair<TermPtr, bool>> expect;
  };
  std::vector<Row> table = {
      {Mode::ACDL,
       {{shift, true}, {smash, true}, {appender, true}, {msp, true},
        {ode4p, false}, {times, false}, {star2, false}, {star1, false},
        {smash_oracle, false}}},
      {Mode::ACDL_SMASH,
       {{shift, true}, {msp, true}, {smash_oracle, true}, {smash, false},
        {appender, false}, {ode4p, false}, {times, false}, {star2, false},
        {star1, false}}},
      {Mode::ACDL_WK,
       {{shift, true}, {smash, true}, {msp, true}, {appender, false},
        {ode4p, false}, {times, false}, {star2, false}, {star1, false},
        {smash_oracle, false}}},
      {Mode::ACDL_ODE4,
       {{shift, true}, {ode4p, true}, {msp, false}, {smash, false},
        {appender, false}, {times, false}, {star2, false}, {star1, false},
        {smash_oracle, false}}},
      {Mode::TCDL,
       {{shift, true}, {smash, true}, {appender, true}, {msp, true},
        {times, true}, {ode4p, false}, {star2, false}, {star1, false},
        {smash_oracle, false}}},
      {Mode::TCDL_STAR,
       {{shift, true}, {smash, true}, {appender, true}, {msp, true},
        {star2, true}, {times, false}, {ode4p, false}, {star1, false},
        {smash_oracle, false}}},
      {Mode::TCDL_SMASH,
       {{shift, true}, {msp, true}, {star1, true}, {smash_oracle, true},
        {smash, false}, {appender, false}, {times, false}, {star2, false},
        {ode4p, false}}},
  };
  for (const auto& row : table) {
    for (const auto& [term, want] : row.expect) {
      bool got = validate(term, row.mode).ok();
      o.require(got == want, preset(row.mode).name + " on " + to_string(term));
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Outcome()> fn;
  };
  std::vector<Entry> criteria = {
      {"degree-calculus", criterion1},
      {"closed-form-vs-step-oracle", criterion2},
      {"stdlib-oracles", criterion3},
      {"schema-side-conditions", criterion4},
      {"compiler-correctness", criterion5},
      {"nonuniform-roundtrip", criterion6},
      {"mode-presets", criterion7},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    auto secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("ACCEPT-%zu %-28s %s  (%ld checks, %.1fs)%s%s\n", i + 1,
                criteria[i].name, o.pass ? "PASS" : "FAIL", o.checks, secs,
                o.note.empty() ? "" : "  -- ", o.note.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  if (failures)
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  else
    std::printf("acceptance: all criteria passed\n");
  return failures == 0 ? 0 : 1;
}
