#include "odecirc/stdterms.hpp"

#include <stdexcept>

#include "odecirc/validate.hpp"

namespace odecirc {

namespace {

TermPtr P(unsigned i, unsigned p) { return t_proj(i, p); }
TermPtr C0(unsigned p) { return t_const0(p); }
TermPtr C1(unsigned p) { return t_const1(p); }

std::vector<TermPtr> projs(unsigned q, unsigned from, unsigned to) {
  std::vector<TermPtr> v;
  for (unsigned i = from; i <= to; ++i) v.push_back(P(i, q));
  return v;
}

bool all_nonneg(const std::vector<Value>& args) {
  for (const auto& a : args)
    if (a < 0) return false;
  return true;
}

}  // namespace

TermPtr tapply(const TermPtr& f, std::vector<TermPtr> args) {
  return t_comp(f, std::move(args));
}

TermPtr lift(const TermPtr& t, unsigned q, const std::vector<unsigned>& argmap) {
  if (argmap.size() != t->arity)
    throw TermError("InconsistentArity", "lift: argmap size mismatch");
  if (t->arity == 0) {
    switch (t->kind) {
      case TermKind::Const0: return t_const0(q);
      case TermKind::Const1: return t_const1(q);
      case TermKind::Length: return t_len(lift(t->kids[0], q, {}));
      case TermKind::Sign: return t_sg(lift(t->kids[0], q, {}));
      case TermKind::Div2: return t_div2(lift(t->kids[0], q, {}));
      case TermKind::Add:
        return t_add(lift(t->kids[0], q, {}), lift(t->kids[1], q, {}));
      case TermKind::Sub:
        return t_sub(lift(t->kids[0], q, {}), lift(t->kids[1], q, {}));
      case TermKind::Times:
        return t_times(lift(t->kids[0], q, {}), lift(t->kids[1], q, {}));
      case TermKind::Compose: {
        if (t->kids.size() == 1) return lift(t->kids[0], q, {});
        std::vector<TermPtr> args;
        for (size_t i = 1; i < t->kids.size(); ++i)
          args.push_back(lift(t->kids[i], q, {}));
        return t_comp(t->kids[0], std::move(args));
      }
      default:
        throw TermError("InconsistentArity", "cannot lift 0-ary node");
    }
  }
  if (t->kind == TermKind::Proj) return t_proj(argmap[t->proj_index - 1], q);
  if (t->kind == TermKind::Const0) return t_const0(q);
  if (t->kind == TermKind::Const1) return t_const1(q);
  std::vector<TermPtr> args;
  args.reserve(argmap.size());
  for (unsigned pos : argmap) args.push_back(t_proj(pos, q));
  return t_comp(t, std::move(args));
}

TermPtr b_and(TermPtr a, TermPtr b) {
  unsigned q = a->arity;
  return t_sg(t_sub(t_add(std::move(a), std::move(b)), C1(q)));
}
TermPtr b_or(TermPtr a, TermPtr b) { return t_sg(t_add(std::move(a), std::move(b))); }
TermPtr b_not(TermPtr a) {
  unsigned q = a->arity;
  return t_sub(C1(q), t_sg(std::move(a)));
}
TermPtr t_geq(TermPtr a, TermPtr b) {
  unsigned q = a->arity;
  return t_sub(C1(q), t_sg(t_sub(std::move(b), std::move(a))));
}
TermPtr t_eq(TermPtr a, TermPtr b) { return b_and(t_geq(a, b), t_geq(b, a)); }

// ---------------------------------------------------------------------------

NamedTerm mk_shift() {
  NamedTerm nt;
  nt.name = "shift";
  nt.term = t_ode1(P(1, 1), C0(2));
  nt.oracle = [](const std::vector<Value>& a) { return a[1] << len(a[0]); };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_smash() {
  NamedTerm nt;
  nt.name = "smash";
  nt.term = t_ode2(C1(1), C0(2), P(1, 1));
  nt.oracle = [](const std::vector<Value>& a) {
    return Value(1) << (static_cast<unsigned long long>(len(a[0])) * len(a[1]));
  };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_msp() {
  NamedTerm nt;
  nt.name = "msp";
  nt.term = t_ode3(P(1, 1));
  nt.oracle = [](const std::vector<Value>& a) { return a[1] >> len(a[0]); };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_if() {
  // (2^{l(1-sg(x))} * y - y) + (2^{l(sg(x))} * z - z)
  TermPtr shift = mk_shift().term;
  TermPtr ybranch =
      t_sub(tapply(shift, {t_sub(C1(3), t_sg(P(1, 3))), P(2, 3)}), P(2, 3));
  TermPtr zbranch = t_sub(tapply(shift, {t_sg(P(1, 3)), P(3, 3)}), P(3, 3));
  NamedTerm nt;
  nt.name = "if";
  nt.term = t_add(ybranch, zbranch);
  nt.oracle = [](const std::vector<Value>& a) { return a[0] == 0 ? a[1] : a[2]; };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_cond() {
  TermPtr iff = mk_if().term;
  NamedTerm nt;
  nt.name = "cond";
  nt.term = tapply(iff, {t_sg(t_sub(P(2, 4), P(1, 4))), P(4, 4), P(3, 4)});
  nt.oracle = [](const std::vector<Value>& a) { return a[0] < a[1] ? a[2] : a[3]; };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_bit() {
  // bit(x,y) = msp(y,x) - 2 * msp(2y+1, x)
  TermPtr msp = mk_msp().term;
  TermPtr m1 = tapply(msp, {P(2, 2), P(1, 2)});
  TermPtr s1y = t_add(t_add(P(2, 2), P(2, 2)), C1(2));
  TermPtr m2 = tapply(msp, {s1y, P(1, 2)});
  NamedTerm nt;
  nt.name = "bit";
  nt.term = t_sub(m1, t_add(m2, m2));
  nt.oracle = [](const std::vector<Value>& a) {
    return Value(bit_of(a[0], len(a[1])));
  };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_bexp_aux() {
  // f_aux(t,x,i): 1 appended at the jump where the length reaches i, so
  // f_aux(x,x,i) = 2^{l(x)-i} for i <= l(x). The guard is an equality test on
  // the length of the successor (l(2t+1) = l(t)+1, the jump-point convention);
  // a bare if(l(t)-i,1,0) also fires on negative differences since sg is 0
  // there.
  TermPtr iff = mk_if().term;
  TermPtr g = tapply(iff, {P(2, 2), C1(2), C0(2)});
  TermPtr s1t = t_add(t_add(P(1, 3), P(1, 3)), C1(3));
  TermPtr h = t_eq(t_len(s1t), P(3, 3));
  NamedTerm nt;
  nt.name = "bexp-aux";
  nt.term = t_ode1(g, h);
  nt.oracle = [](const std::vector<Value>& a) -> Value {
    unsigned L = len(a[0]);
    if (a[2] == 0) return pow2(L);
    if (a[2] <= L) return pow2(L - a[2].convert_to<unsigned>());
    return 0;
  };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_bexp() {
  // bexp(x,i) = msp(f_aux(x,x,i) - 1, 2^{l(x)})
  TermPtr msp = mk_msp().term;
  TermPtr shift = mk_shift().term;
  TermPtr faux = mk_bexp_aux().term;
  TermPtr faux_xx = tapply(faux, {P(1, 2), P(1, 2), P(2, 2)});
  TermPtr pow_lx = tapply(shift, {P(1, 2), C1(2)});
  NamedTerm nt;
  nt.name = "bexp";
  nt.term = tapply(msp, {t_sub(faux_xx, C1(2)), pow_lx});
  nt.oracle = [](const std::vector<Value>& a) {
    return pow2(a[1].convert_to<unsigned>());
  };
  nt.in_regime = [](const std::vector<Value>& a) {
    return all_nonneg(a) && a[1] <= len(a[0]);
  };
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_BIT() {
  // bit(x, bexp(x,y)-1) under a y < l(x) range guard, which pins the value 0
  // outside the regime where bexp is meaningful; total against the A0 oracle.
  TermPtr bit = mk_bit().term;
  TermPtr bexp = mk_bexp().term;
  TermPtr cond = mk_cond().term;
  TermPtr core =
      tapply(bit, {P(1, 2), t_sub(tapply(bexp, {P(1, 2), P(2, 2)}), C1(2))});
  NamedTerm nt;
  nt.name = "BIT";
  nt.term = tapply(cond, {P(2, 2), t_len(P(1, 2)), core, C0(2)});
  nt.oracle = [](const std::vector<Value>& a) {
    return Value(bit_of(a[0], a[1].convert_to<unsigned>()));
  };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_mod2() {
  NamedTerm nt;
  nt.name = "mod2";
  nt.term = t_sub(t_sub(P(1, 1), t_div2(P(1, 1))), t_div2(P(1, 1)));
  nt.oracle = [](const std::vector<Value>& a) { return Value(bit_of(a[0], 0)); };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_s0() {
  NamedTerm nt;
  nt.name = "s0";
  nt.term = t_add(P(1, 1), P(1, 1));
  nt.oracle = [](const std::vector<Value>& a) { return a[0] * 2; };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_s1() {
  NamedTerm nt;
  nt.name = "s1";
  nt.term = t_add(t_add(P(1, 1), P(1, 1)), C1(1));
  nt.oracle = [](const std::vector<Value>& a) { return a[0] * 2 + 1; };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_cosg() {
  NamedTerm nt;
  nt.name = "cosg";
  nt.term = t_sub(C1(1), t_sg(P(1, 1)));
  nt.oracle = [](const std::vector<Value>& a) { return Value(cosg(a[0])); };
  nt.in_regime = nullptr;  // total over Z
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_bcount() {
  // f(0,y) = BIT_0(y), df/dl = BIT(y, l(t+1)); bcount(x) = f(x,x).
  // An ODE2* instance with k = 0; the bit index follows the successor of the
  // jump point so the sweep reads bits 1..l(x) (bit 0 comes from g).
  TermPtr BIT = mk_BIT().term;
  TermPtr mod2 = mk_mod2().term;
  TermPtr g = tapply(mod2, {P(1, 1)});
  TermPtr h = tapply(BIT, {P(2, 2), t_len(t_add(P(1, 2), C1(2)))});
  TermPtr f = t_ode2_star(g, h, C0(1));
  NamedTerm nt;
  nt.name = "bcount";
  nt.term = tapply(f, {P(1, 1), P(1, 1)});
  nt.oracle = [](const std::vector<Value>& a) {
    Value n = 0;
    for (unsigned b = 0; b < len(a[0]); ++b) n += bit_of(a[0], b);
    return n;
  };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_crn(const NamedTerm& g, const NamedTerm& h0, const NamedTerm& h1) {
  if (!statically_boolean(h0.term) || !statically_boolean(h1.term))
    throw TermError("NonBooleanStep", "CRN step functions must be {0,1}-valued");
  unsigned p = g.arity();
  if (h0.arity() != p + 1 || h1.arity() != p + 1)
    throw TermError("InconsistentArity", "CRN step arity must be arity(g)+1");
  unsigned q = p + 2;  // (t, x, ys...)

  TermPtr bexp = mk_bexp().term;
  TermPtr bit = mk_bit().term;
  TermPtr msp = mk_msp().term;
  TermPtr iff = mk_if().term;

  // h'(t,x,ys) = h(t+1,x,ys) with
  //   h(t,..) = if(bit(x, 2^{l(x)-l(t)}-1), h0(msp(2^{l(x)-l(t)},x),ys),
  //                                         h1(msp(2^{l(x)-l(t)},x),ys))
  TermPtr tplus1 = t_add(P(1, q), C1(q));
  TermPtr idx = t_sub(t_len(P(2, q)), t_len(tplus1));
  TermPtr pw = tapply(bexp, {P(2, q), idx});
  TermPtr sel = tapply(bit, {P(2, q), t_sub(pw, C1(q))});
  TermPtr prefix = tapply(msp, {pw, P(2, q)});

  auto step_args = [&](const TermPtr& step) {
    std::vector<TermPtr> args{prefix};
    for (unsigned i = 3; i <= q; ++i) args.push_back(P(i, q));
    return tapply(step, args);
  };
  TermPtr hprime = tapply(iff, {sel, step_args(h0.term), step_args(h1.term)});

  std::vector<unsigned> gmap;
  for (unsigned i = 0; i < p; ++i) gmap.push_back(i + 2);
  TermPtr gF = lift(g.term, p + 1, gmap);
  TermPtr F = t_ode1(gF, hprime);

  std::vector<TermPtr> diag{P(1, p + 1), P(1, p + 1)};
  for (unsigned i = 2; i <= p + 1; ++i) diag.push_back(P(i, p + 1));

  NamedTerm nt;
  nt.name = "crn(" + g.name + "," + h0.name + "," + h1.name + ")";
  nt.term = tapply(F, diag);
  auto gor = g.oracle;
  auto h0or = h0.oracle;
  auto h1or = h1.oracle;
  nt.oracle = [gor, h0or, h1or](const std::vector<Value>& a) {
    const Value& x = a[0];
    std::vector<Value> ys(a.begin() + 1, a.end());
    Value acc = gor(ys);
    for (int pos = static_cast<int>(len(x)) - 1; pos >= 0; --pos) {
      std::vector<Value> ha;
      ha.push_back(x >> (pos + 1));
      for (const auto& y : ys) ha.push_back(y);
      Value hv = bit_of(x, pos) ? h1or(ha) : h0or(ha);
      acc = acc * 2 + hv;
    }
    return acc;
  };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

namespace {

// (exists z <= l(x)) R(z,ys) = sg(f(x,ys)) with f an ODE1 accumulator whose
// step samples R at l(x+1).
TermPtr bounded_exists_term(const TermPtr& hR) {
  unsigned p = hR->arity - 1;
  std::vector<TermPtr> gargs{C0(p)};
  for (unsigned i = 1; i <= p; ++i) gargs.push_back(P(i, p));
  TermPtr gE = tapply(hR, gargs);
  std::vector<TermPtr> hargs{t_len(t_add(P(1, p + 1), C1(p + 1)))};
  for (unsigned i = 2; i <= p + 1; ++i) hargs.push_back(P(i, p + 1));
  TermPtr hE = tapply(hR, hargs);
  return t_sg(t_ode1(gE, hE));
}

TermPtr bounded_forall_term(const TermPtr& hR) {
  unsigned p = hR->arity - 1;
  std::vector<TermPtr> gargs{C0(p)};
  for (unsigned i = 1; i <= p; ++i) gargs.push_back(P(i, p));
  TermPtr gF = b_not(tapply(hR, gargs));
  std::vector<TermPtr> hargs{t_len(t_add(P(1, p + 1), C1(p + 1)))};
  for (unsigned i = 2; i <= p + 1; ++i) hargs.push_back(P(i, p + 1));
  TermPtr hF = b_not(tapply(hR, hargs));
  return b_not(t_ode1(gF, hF));
}

}  // namespace

NamedTerm mk_bounded_exists(const NamedTerm& h_R) {
  NamedTerm nt;
  nt.name = "exists(" + h_R.name + ")";
  nt.term = bounded_exists_term(h_R.term);
  auto ror = h_R.oracle;
  nt.oracle = [ror](const std::vector<Value>& a) -> Value {
    unsigned L = len(a[0]);
    std::vector<Value> ra(a.size());
    for (size_t i = 1; i < a.size(); ++i) ra[i] = a[i];
    for (unsigned z = 0; z <= L; ++z) {
      ra[0] = z;
      if (ror(ra) == 1) return 1;
    }
    return 0;
  };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

NamedTerm mk_bounded_forall(const NamedTerm& h_R) {
  NamedTerm nt;
  nt.name = "forall(" + h_R.name + ")";
  nt.term = bounded_forall_term(h_R.term);
  auto ror = h_R.oracle;
  nt.oracle = [ror](const std::vector<Value>& a) -> Value {
    unsigned L = len(a[0]);
    std::vector<Value> ra(a.size());
    for (size_t i = 1; i < a.size(); ++i) ra[i] = a[i];
    for (unsigned z = 0; z <= L; ++z) {
      ra[0] = z;
      if (ror(ra) != 1) return 0;
    }
    return 1;
  };
  nt.in_regime = all_nonneg;
  nt.modes = modes_accepting(nt.term);
  return nt;
}

TermPtr index_space_term(unsigned k, unsigned arity, unsigned arg) {
  if (k == 0) return C1(arity);
  TermPtr shift = mk_shift().term;
  TermPtr smash = mk_smash().term;
  TermPtr w = t_sub(tapply(shift, {P(arg, arity), C1(arity)}), C1(arity));
  for (unsigned j = 1; j < k; ++j)
    w = t_sub(tapply(smash, {w, P(arg, arity)}), C1(arity));
  return w;
}

NamedTerm mk_min(const NamedTerm& g, const NamedTerm& h, unsigned k) {
  if (g.arity() < 2 || h.arity() != g.arity())
    throw TermError("InconsistentArity", "min needs g,h of shared arity >= 2");
  unsigned nx = g.arity() - 1;

  TermPtr iff = mk_if().term;
  TermPtr bexp = mk_bexp().term;
  TermPtr msp = mk_msp().term;
  TermPtr mod2 = mk_mod2().term;

  TermPtr W = index_space_term(k, nx, 1);

  auto lift_W = [&](unsigned q, unsigned first_x) {
    std::vector<unsigned> map;
    for (unsigned i = 0; i < nx; ++i) map.push_back(first_x + i);
    return lift(W, q, map);
  };
  auto apply_tail = [&](const TermPtr& f, std::vector<TermPtr> head, unsigned q,
                        unsigned first_x) {
    for (unsigned i = 0; i < nx; ++i) head.push_back(P(first_x + i, q));
    return tapply(f, head);
  };

  // any(xs) = exists i <= l(W): h(i,xs)=1
  TermPtr any = apply_tail(bounded_exists_term(h.term), {W}, nx, 1);

  // R'(j,i,xs) = not h(j,xs) or g(j,xs) >= g(i,xs)
  {
    unsigned q = nx + 2;
    TermPtr qual_j = apply_tail(h.term, {P(1, q)}, q, 3);
    TermPtr g_j = apply_tail(g.term, {P(1, q)}, q, 3);
    TermPtr g_i = apply_tail(g.term, {P(2, q)}, q, 3);
    TermPtr Rp = b_or(b_not(qual_j), t_geq(g_j, g_i));
    // is_min(i,xs) = h(i,xs) and (forall j <= l(W)) R'(j,i,xs)
    unsigned qi = nx + 1;
    TermPtr all_geq = apply_tail(bounded_forall_term(Rp), {lift_W(qi, 2), P(1, qi)}, qi, 2);
    TermPtr qual_i = apply_tail(h.term, {P(1, qi)}, qi, 2);
    TermPtr is_min = b_and(qual_i, all_geq);

    // R2(i,b,xs) = is_min(i,xs) and bit b of g(i,xs)
    unsigned q2 = nx + 2;
    std::vector<unsigned> imap{1};
    for (unsigned i = 0; i < nx; ++i) imap.push_back(3 + i);
    TermPtr is_min2 = lift(is_min, q2, imap);
    TermPtr g_i2 = apply_tail(g.term, {P(1, q2)}, q2, 3);
    TermPtr pow_b = tapply(bexp, {lift_W(q2, 3), P(2, q2)});
    TermPtr bit_b =
        tapply(mod2, {tapply(msp, {t_sub(pow_b, C1(q2)), g_i2})});
    TermPtr R2 = b_and(is_min2, bit_b);

    // assembled value: append bit (P-1-l(w)) of the minimum at each jump
    unsigned qa = nx + 1;
    TermPtr EB = bounded_exists_term(R2);
    TermPtr beta =
        t_sub(t_sub(t_len(lift_W(qa, 2)), t_len(P(1, qa))), C1(qa));
    TermPtr h_asm = apply_tail(EB, {lift_W(qa, 2), beta}, qa, 2);
    TermPtr ASM = t_ode1(C0(nx), h_asm);
    TermPtr assembled = apply_tail(ASM, {W}, nx, 1);

    NamedTerm nt;
    nt.name = "min(" + g.name + "," + h.name + "," + std::to_string(k) + ")";
    nt.term = tapply(iff, {any, C1(nx), assembled});
    auto gor = g.oracle;
    auto hor = h.oracle;
    nt.oracle = [gor, hor, k](const std::vector<Value>& a) -> Value {
      Value bound = 1;
      for (unsigned j = 0; j < k; ++j) bound *= len(a[0]);
      std::vector<Value> ia(a.size() + 1);
      for (size_t i = 0; i < a.size(); ++i) ia[i + 1] = a[i];
      std::optional<Value> best;
      for (Value i = 0; i <= bound; ++i) {
        ia[0] = i;
        if (hor(ia) != 1) continue;
        Value gv = gor(ia);
        if (!best || gv < *best) best = gv;
      }
      return best ? *best : Value(1);
    };
    nt.in_regime = all_nonneg;
    nt.modes = modes_accepting(nt.term);
    return nt;
  }
}

// ---------------------------------------------------------------------------

const OracleBindings& standard_oracle_bindings() {
  static const OracleBindings b = [] {
    OracleBindings m;
    m["#"] = [](const std::vector<Value>& a) {
      return Value(1) << (static_cast<unsigned long long>(len(a[0])) * len(a[1]));
    };
    return m;
  }();
  return b;
}

std::vector<Mode> modes_accepting(const TermPtr& t) {
  std::vector<Mode> out;
  for (const auto& p : all_presets())
    if (validate(t, p).ok()) out.push_back(p.id);
  return out;
}

const std::vector<NamedTerm>& stdlib_registry() {
  static const std::vector<NamedTerm> reg = [] {
    std::vector<NamedTerm> v;
    v.push_back(mk_shift());
    v.push_back(mk_smash());
    v.push_back(mk_msp());
    v.push_back(mk_if());
    v.push_back(mk_cond());
    v.push_back(mk_bit());
    v.push_back(mk_bexp_aux());
    v.push_back(mk_bexp());
    v.push_back(mk_BIT());
    v.push_back(mk_mod2());
    v.push_back(mk_s0());
    v.push_back(mk_s1());
    v.push_back(mk_cosg());
    v.push_back(mk_bcount());

    {
      NamedTerm g{"one", C1(0),
                  [](const std::vector<Value>&) { return Value(1); }, nullptr, {}};
      NamedTerm h0{"zero", C0(1),
                   [](const std::vector<Value>&) { return Value(0); }, nullptr, {}};
      NamedTerm h1{"one", C1(1),
                   [](const std::vector<Value>&) { return Value(1); }, nullptr, {}};
      NamedTerm crn = mk_crn(g, h0, h1);
      crn.name = "crn-copy";
      v.push_back(crn);
    }
    {
      // R(z,y) = BIT(y,z): some bit among the low l(x)+1 of y is set
      NamedTerm R{"bit-at", tapply(mk_BIT().term, {P(2, 2), P(1, 2)}),
                  [](const std::vector<Value>& a) {
                    return Value(bit_of(a[1], a[0].convert_to<unsigned>()));
                  },
                  nullptr, {}};
      NamedTerm ex = mk_bounded_exists(R);
      ex.name = "exists-bit";
      v.push_back(ex);
      NamedTerm fa = mk_bounded_forall(R);
      fa.name = "forall-bit";
      v.push_back(fa);
    }
    {
      NamedTerm g{"index", P(1, 2),
                  [](const std::vector<Value>& a) { return a[0]; }, nullptr, {}};
      NamedTerm h{"geq2", t_sg(t_sub(P(1, 2), C1(2))),
                  [](const std::vector<Value>& a) { return Value(sg(a[0] - 1)); },
                  nullptr, {}};
      NamedTerm mn = mk_min(g, h, 1);
      mn.name = "min-geq2";
      v.push_back(mn);
    }
    return v;
  }();
  return reg;
}

std::optional<NamedTerm> stdlib_lookup(const std::string& name) {
  for (const auto& nt : stdlib_registry())
    if (nt.name == name) return nt;
  return std::nullopt;
}

}  // namespace odecirc
