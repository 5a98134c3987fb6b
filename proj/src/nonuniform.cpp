#include "odecirc/nonuniform.hpp"

#include <map>
#include <set>
#include <sstream>

#include "odecirc/validate.hpp"

namespace odecirc {

namespace {

TermPtr P(unsigned i, unsigned p) { return t_proj(i, p); }
TermPtr C0(unsigned p) { return t_const0(p); }
TermPtr C1(unsigned p) { return t_const1(p); }

struct FamilyTables {
  unsigned n_virtual;  // n + 1 (pad input)
  unsigned m;
  std::set<std::pair<uint64_t, uint64_t>> edges;          // new ids
  std::map<unsigned, std::set<uint64_t>> level_members;   // level >= 1
};

bool as_bool(const Value& v) { return v == 1; }

}  // namespace

CircuitFamilyAdapter adapter_from_circuit(const Circuit& c) {
  if (c.n_inputs == 0)
    throw NonuniformError("IndexSpaceTooSmall", "circuit has no inputs");
  const unsigned n = c.n_inputs;
  const unsigned nv = n + 1;
  const unsigned m = static_cast<unsigned>(c.outputs.size());

  // count internal (level 1..d-1) gates
  std::vector<const Gate*> internals;
  for (const auto& g : c.gates)
    if (g.level >= 1 && g.level < c.depth) internals.push_back(&g);

  unsigned kv = std::max(2u, c.k);
  auto space_of = [&](unsigned k) {
    unsigned __int128 s = 1;
    for (unsigned i = 0; i < k; ++i) s *= nv;
    return s;
  };
  unsigned __int128 need = 2ull * nv + internals.size() + m;
  if (space_of(kv) < need)
    throw NonuniformError("IndexSpaceTooSmall",
                          "gates exceed the (n+1)^k index space");
  uint64_t space = static_cast<uint64_t>(space_of(kv));

  // re-index into the virtual space: inputs keep their ids, the pad input is
  // id n, negations move to nv..2nv-1, internals are packed, outputs at the top
  std::map<uint64_t, uint64_t> remap;
  for (unsigned i = 0; i < n; ++i) remap[i] = i;
  for (unsigned i = 0; i < n; ++i) remap[n + i] = nv + i;
  uint64_t next = 2 * nv;
  for (const Gate* g : internals) remap[g->id] = next++;
  for (unsigned j = 0; j < m; ++j) remap[c.outputs[j]] = space - m + j;

  auto tables = std::make_shared<FamilyTables>();
  tables->n_virtual = nv;
  tables->m = m;
  for (const auto& g : c.gates) {
    if (g.level >= 1) tables->level_members[g.level].insert(remap[g.id]);
    for (uint64_t p : g.preds)
      tables->edges.insert({remap[p], remap[g.id]});
  }

  CircuitFamilyAdapter a;
  a.variant = c.variant;
  a.k = kv;
  a.d = c.depth;
  a.fixed_m = m;
  a.fixed_n = nv;

  a.oracles["m"] = [m](const std::vector<Value>&) { return Value(m); };
  a.oracles["C"] = [tables](const std::vector<Value>& args) -> Value {
    // C(x, a, b): a is a predecessor of b
    if (args[1] < 0 || args[2] < 0) return 0;
    if (args[1] > std::numeric_limits<int64_t>::max() ||
        args[2] > std::numeric_limits<int64_t>::max())
      return 0;
    return tables->edges.count({args[1].convert_to<uint64_t>(),
                                args[2].convert_to<uint64_t>()})
               ? 1
               : 0;
  };
  a.oracles["L0in"] = [tables](const std::vector<Value>& args) -> Value {
    // holds when a names an input gate whose bit in x is 1
    const Value& at = args[0];
    if (at < 0 || at >= tables->n_virtual) return 0;
    return bit_of(args[1], at.convert_to<unsigned>());
  };
  a.oracles["L0neg"] = [tables](const std::vector<Value>& args) -> Value {
    const Value& at = args[0];
    return (at >= tables->n_virtual && at < 2 * tables->n_virtual) ? 1 : 0;
  };
  for (unsigned e = 1; e <= c.depth; ++e) {
    a.oracles["L" + std::to_string(e)] =
        [tables, e](const std::vector<Value>& args) -> Value {
      auto it = tables->level_members.find(e);
      if (it == tables->level_members.end()) return 0;
      if (args[0] < 0 || args[0] > std::numeric_limits<int64_t>::max()) return 0;
      return it->second.count(args[0].convert_to<uint64_t>()) ? 1 : 0;
    };
  }
  return a;
}

Value encode_input(const BitVector& input) {
  Value v = input.to_value();
  boost::multiprecision::bit_set(v, input.width());
  return v;
}

namespace {

struct EvalBuilder {
  const CircuitFamilyAdapter& a;
  TermPtr BIT = mk_BIT().term;
  TermPtr iff = mk_if().term;
  TermPtr bexp = mk_bexp().term;
  TermPtr oc_C = t_oracle("C", 3, true);
  TermPtr oc_l0in = t_oracle("L0in", 2, true);
  TermPtr oc_l0neg = t_oracle("L0neg", 2, true);
  TermPtr oc_m = t_oracle("m", 1, false);
  TermPtr W1;  // driver of length l(x)^k, arity 1

  explicit EvalBuilder(const CircuitFamilyAdapter& ad)
      : a(ad), W1(index_space_term(ad.k, 1, 1)) {}

  TermPtr level_oracle(unsigned e) {
    return t_oracle("L" + std::to_string(e), 2, true);
  }

  // Eval_0(t,x): input bits, negated input bits, 0 elsewhere
  TermPtr eval0() {
    TermPtr l0in = tapply(oc_l0in, {P(1, 2), P(2, 2)});
    TermPtr l0neg = tapply(oc_l0neg, {P(1, 2), P(2, 2)});
    TermPtr bit_t = tapply(BIT, {P(2, 2), P(1, 2)});
    TermPtr negbit = t_sub(
        C1(2), tapply(BIT, {P(2, 2), t_sub(P(1, 2), t_len(P(2, 2)))}));
    TermPtr inner = tapply(iff, {l0neg, C0(2), negbit});
    return tapply(iff, {l0in, inner, bit_t});
  }

  // existential scan over i <= l(x)^k of R(i,t,x); R has arity 3
  TermPtr exists_scan(const TermPtr& R) {
    // bounded exists along the driver W(x)
    unsigned p = 2;
    std::vector<TermPtr> gargs{C0(p)};
    for (unsigned i = 1; i <= p; ++i) gargs.push_back(P(i, p));
    TermPtr gE = tapply(R, gargs);
    std::vector<TermPtr> hargs{t_len(t_add(P(1, p + 1), C1(p + 1)))};
    for (unsigned i = 2; i <= p + 1; ++i) hargs.push_back(P(i, p + 1));
    TermPtr hE = tapply(R, hargs);
    TermPtr ex = t_sg(t_ode1(gE, hE));  // arity 3: (w, t, x)
    return tapply(ex, {lift(W1, 2, {2}), P(1, 2), P(2, 2)});
  }

  TermPtr gate_guard(unsigned e, TermPtr value) {
    TermPtr le = tapply(level_oracle(e), {P(1, 2), P(2, 2)});
    return tapply(iff, {le, C0(2), std::move(value)});
  }

  TermPtr and_level(unsigned e, const TermPtr& prev) {
    // 1 - min over predecessors: fails iff some predecessor is 0
    TermPtr Capp = tapply(oc_C, {P(3, 3), P(1, 3), P(2, 3)});
    TermPtr prev_i = tapply(prev, {P(1, 3), P(3, 3)});
    TermPtr R = b_and(Capp, b_not(prev_i));
    return gate_guard(e, b_not(exists_scan(R)));
  }

  TermPtr or_level(unsigned e, const TermPtr& prev) {
    TermPtr Capp = tapply(oc_C, {P(3, 3), P(1, 3), P(2, 3)});
    TermPtr prev_i = tapply(prev, {P(1, 3), P(3, 3)});
    TermPtr R = b_and(Capp, prev_i);
    return gate_guard(e, exists_scan(R));
  }

  // bcount_h(t,x) = sum_{i <= l(x)^k} h(i,t,x), an ODE2* instance with k = 0
  TermPtr bcount_of(const TermPtr& h3) {
    std::vector<TermPtr> gargs{C0(2), P(1, 2), P(2, 2)};
    TermPtr g = tapply(h3, gargs);
    std::vector<TermPtr> hargs{t_len(t_add(P(1, 3), C1(3))), P(2, 3), P(3, 3)};
    TermPtr hstep = tapply(h3, hargs);
    TermPtr F = t_ode2_star(g, hstep, C0(2));  // arity 3: (w, t, x)
    return tapply(F, {lift(W1, 2, {2}), P(1, 2), P(2, 2)});
  }

  TermPtr maj_level(unsigned e, const TermPtr& prev) {
    // strict majority: sg(2*bcount_{v1} - bcount_{v0})
    TermPtr Capp = tapply(oc_C, {P(3, 3), P(1, 3), P(2, 3)});
    TermPtr v0 = t_sg(Capp);
    TermPtr prev_i = tapply(prev, {P(1, 3), P(3, 3)});
    TermPtr v1 = b_and(Capp, prev_i);
    TermPtr b0 = bcount_of(v0);
    TermPtr b1 = bcount_of(v1);
    return gate_guard(e, t_sg(t_sub(t_add(b1, b1), b0)));
  }

  EvalTermSet build() {
    std::vector<TermPtr> levels{eval0()};
    for (unsigned e = 1; e <= a.d; ++e) {
      const TermPtr& prev = levels.back();
      if (a.variant == Variant::AC) {
        levels.push_back(e % 2 == 0 ? and_level(e, prev) : or_level(e, prev));
      } else {
        switch (e % 3) {
          case 1: levels.push_back(or_level(e, prev)); break;
          case 2: levels.push_back(and_level(e, prev)); break;
          default: levels.push_back(maj_level(e, prev)); break;
        }
      }
    }

    // accumulator: df/dl(y) = f + Eval(l(W(x)) - 1 - m(x) + l(y), x)
    TermPtr Wx = lift(W1, 2, {2});
    TermPtr idx = t_add(
        t_sub(t_sub(t_len(Wx), C1(2)), tapply(oc_m, {P(2, 2)})), t_len(P(1, 2)));
    TermPtr hF = tapply(levels.back(), {idx, P(2, 2)});
    TermPtr F = t_ode1(C0(1), hF);

    // entry point: F(2^{m(x)}, x)
    TermPtr pow_m = tapply(bexp, {W1, tapply(oc_m, {P(1, 1)})});
    TermPtr entry = tapply(F, {pow_m, P(1, 1)});

    ModePreset preset_base =
        preset(a.variant == Variant::AC ? Mode::ACDL : Mode::TCDL_STAR)
            .with_oracles();
    auto vf = validate(F, preset_base);
    auto ve = validate(entry, preset_base);
    if (!vf.ok() || !ve.ok())
      throw std::logic_error("Eval term failed validation");

    EvalTermSet set{*vf.checked, *ve.checked, levels, a.k, a.d};
    return set;
  }
};

}  // namespace

EvalTermSet build_eval_term(const CircuitFamilyAdapter& a) {
  if (a.variant != Variant::AC)
    throw NonuniformError("VariantMismatch", "adapter describes a TC family");
  return EvalBuilder(a).build();
}

EvalTermSet build_eval_term_tc(const CircuitFamilyAdapter& a) {
  if (a.variant != Variant::TC)
    throw NonuniformError("VariantMismatch", "adapter describes an AC family");
  return EvalBuilder(a).build();
}

BitVector output_bits_of(const Value& v, unsigned m) {
  BitVector out;
  out.bits.resize(m);
  for (unsigned j = 0; j < m; ++j) out.bits[j] = bit_of(v, m - 1 - j) != 0;
  return out;
}

std::string RoundtripReport::to_text() const {
  std::ostringstream os;
  os << "input expected got\n";
  for (const auto& r : rows)
    os << r.input.to_string() << " " << r.expected.to_string() << " "
       << r.got.to_string() << (r.expected.bits == r.got.bits ? "" : " MISMATCH")
       << "\n";
  os << "mismatches " << mismatches << "\n";
  return os.str();
}

RoundtripReport roundtrip_check_with(const Circuit& c,
                                     const CircuitFamilyAdapter& adapter,
                                     const std::vector<BitVector>& inputs) {
  EvalTermSet set = adapter.variant == Variant::AC ? build_eval_term(adapter)
                                                   : build_eval_term_tc(adapter);
  unsigned m = adapter.fixed_m;
  RoundtripReport rep;
  for (const auto& in : inputs) {
    BitVector expected = simulate(c, in);
    Value x = encode_input(in);
    Env env({pow2(m), x}, &adapter.oracles);
    Value got_val = eval(set.accumulator, env);
    BitVector got = output_bits_of(got_val, m);
    bool ok = got.bits == expected.bits;
    rep.rows.push_back({in, expected, got});
    if (!ok) ++rep.mismatches;
  }
  return rep;
}

RoundtripReport roundtrip_check(const Circuit& c,
                                const std::vector<BitVector>& inputs) {
  return roundtrip_check_with(c, adapter_from_circuit(c), inputs);
}

RoundtripReport roundtrip_exhaustive(const Circuit& c) {
  std::vector<BitVector> inputs;
  uint64_t total = 1ull << c.n_inputs;
  for (uint64_t v = 0; v < total; ++v)
    inputs.push_back(BitVector::from_value(Value(v), c.n_inputs));
  return roundtrip_check(c, inputs);
}

}  // namespace odecirc
