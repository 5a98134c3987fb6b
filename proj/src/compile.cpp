#include "odecirc/compile.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace odecirc {

namespace {

// ---------------------------------------------------------------------------
// Width inference

struct WidthCtx {
  std::map<std::pair<const Term*, std::vector<unsigned>>, unsigned> memo;

  std::vector<unsigned> params_of(const std::vector<unsigned>& argw) {
    return {argw.begin() + 1, argw.end()};
  }

  unsigned width(const TermPtr& t, const std::vector<unsigned>& argw) {
    auto key = std::make_pair(t.get(), argw);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    unsigned w = 0;
    switch (t->kind) {
      case TermKind::Const0:
      case TermKind::Const1:
        w = 1;
        break;
      case TermKind::Sign:
        width(t->kids[0], argw);
        w = 1;
        break;
      case TermKind::Length:
        w = std::max(1u, len(Value(width(t->kids[0], argw))));
        break;
      case TermKind::Add:
      case TermKind::Sub:
        w = std::max(width(t->kids[0], argw), width(t->kids[1], argw)) + 1;
        break;
      case TermKind::Div2:
        w = width(t->kids[0], argw);
        break;
      case TermKind::Times:
        w = width(t->kids[0], argw) + width(t->kids[1], argw);
        break;
      case TermKind::Proj:
        w = argw.at(t->proj_index - 1);
        break;
      case TermKind::Compose: {
        std::vector<unsigned> inner;
        for (size_t i = 1; i < t->kids.size(); ++i)
          inner.push_back(width(t->kids[i], argw));
        w = width(t->kids[0], inner);
        break;
      }
      case TermKind::Oracle:
        throw CompileError("UnboundOracle",
                           "oracle '" + t->oracle_name +
                               "' has no circuit lowering; use the non-uniform "
                               "round trip instead");
      case TermKind::Ode1: {
        unsigned wx = argw.at(0);
        auto ps = params_of(argw);
        unsigned wg = width(t->kids[0], ps);
        width(t->kids[1], argw);  // h in context (wx, params)
        w = wg + wx;
        break;
      }
      case TermKind::Ode2:
      case TermKind::Ode2Star: {
        unsigned wx = argw.at(0);
        auto ps = params_of(argw);
        unsigned wg = width(t->kids[0], ps);
        width(t->kids[1], argw);
        unsigned wk = width(t->kids[2], ps);
        w = wg + wk * wx + len(Value(wx)) + 2;
        break;
      }
      case TermKind::Ode3: {
        auto ps = params_of(argw);
        w = width(t->kids[0], ps);
        break;
      }
      case TermKind::Ode4: {
        unsigned wx = argw.at(0);
        auto ps = params_of(argw);
        unsigned wg = width(t->kids[0], ps);
        unsigned wk = width(t->kids[1], ps);
        w = t->dir == Ode4Dir::Minus ? wg : wg + wk * wx;
        break;
      }
      case TermKind::Ode1Star: {
        unsigned wx = argw.at(0);
        auto ps = params_of(argw);
        unsigned wg = width(t->kids[0], ps);
        width(t->kids[1], argw);
        width(t->kids[2], argw);
        w = wg + wx + len(Value(wx)) + 2;
        break;
      }
    }
    if (w == 0) w = 1;
    memo.emplace(std::move(key), w);
    return w;
  }
};

// ---------------------------------------------------------------------------
// Structural depth budget: a per-node level allowance that upper-bounds the
// slotted depth of the lowered block. Independent of all widths, so the final
// circuit depth depends only on the term.

constexpr unsigned B_CONST = 1;
constexpr unsigned B_SG = 10;
constexpr unsigned B_LEN = 14;
constexpr unsigned B_ADDSUB = 44;
constexpr unsigned B_DIV2 = 52;
constexpr unsigned B_TIMES = 140;
constexpr unsigned B_ODE1 = 70;
constexpr unsigned B_ODE2 = 78;
constexpr unsigned B_ODE2S = 170;
constexpr unsigned B_ODE3 = 70;
constexpr unsigned B_ODE4 = 86;
constexpr unsigned B_ODE1S = 190;

struct DepthCtx {
  std::map<std::pair<const Term*, std::vector<unsigned>>, unsigned> memo;

  unsigned depth(const TermPtr& t, const std::vector<unsigned>& argd) {
    auto key = std::make_pair(t.get(), argd);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    unsigned d = 0;
    auto ps = std::vector<unsigned>(argd.empty() ? argd
                                                 : std::vector<unsigned>(
                                                       argd.begin() + 1, argd.end()));
    switch (t->kind) {
      case TermKind::Const0:
      case TermKind::Const1:
        d = B_CONST;
        break;
      case TermKind::Proj:
        d = argd.at(t->proj_index - 1);
        break;
      case TermKind::Sign:
        d = depth(t->kids[0], argd) + B_SG;
        break;
      case TermKind::Length:
        d = depth(t->kids[0], argd) + B_LEN;
        break;
      case TermKind::Add:
      case TermKind::Sub:
        d = std::max(depth(t->kids[0], argd), depth(t->kids[1], argd)) + B_ADDSUB;
        break;
      case TermKind::Div2:
        d = depth(t->kids[0], argd) + B_DIV2;
        break;
      case TermKind::Times:
        d = std::max(depth(t->kids[0], argd), depth(t->kids[1], argd)) + B_TIMES;
        break;
      case TermKind::Compose: {
        std::vector<unsigned> inner;
        for (size_t i = 1; i < t->kids.size(); ++i)
          inner.push_back(depth(t->kids[i], argd));
        d = depth(t->kids[0], inner);
        break;
      }
      case TermKind::Oracle:
        throw CompileError("UnboundOracle", "oracle term has no lowering");
      default: {
        unsigned dx = argd.at(0);
        std::vector<unsigned> hctx = argd;
        hctx[0] = B_CONST;  // h is instantiated at hardwired jump points
        unsigned dg = depth(t->kids[0], ps);
        unsigned body = std::max(dg, dx);
        unsigned bud = 0;
        switch (t->kind) {
          case TermKind::Ode1:
            body = std::max(body, depth(t->kids[1], hctx));
            bud = B_ODE1;
            break;
          case TermKind::Ode2:
          case TermKind::Ode2Star:
            body = std::max(body, depth(t->kids[1], hctx));
            body = std::max(body, depth(t->kids[2], ps));
            bud = t->kind == TermKind::Ode2 ? B_ODE2 : B_ODE2S;
            break;
          case TermKind::Ode3:
            bud = B_ODE3;
            break;
          case TermKind::Ode4:
            body = std::max(body, depth(t->kids[1], ps));
            bud = B_ODE4;
            break;
          case TermKind::Ode1Star:
            body = std::max(body, depth(t->kids[1], hctx));
            body = std::max(body, depth(t->kids[2], hctx));
            bud = B_ODE1S;
            break;
          default:
            break;
        }
        d = body + bud;
      }
    }
    memo.emplace(std::move(key), d);
    return d;
  }
};

// ---------------------------------------------------------------------------
// Gate graph builder: unbounded fan-in And/Or/Maj over input literals, with
// constant folding and hash-consing. Signals are dual-rail so complements are
// always at hand without negation gates.

enum class BK : uint8_t { In, NIn, True, False, And, Or, Maj };

struct BNode {
  BK kind;
  std::vector<uint32_t> preds;
};

struct Wire {
  uint32_t pos, neg;
};

struct Builder {
  Variant variant;
  unsigned n_inputs;
  std::vector<BNode> nodes;
  std::unordered_map<std::string, uint32_t> cons;
  uint32_t true_id, false_id;

  Builder(Variant v, unsigned n) : variant(v), n_inputs(n) {
    for (unsigned i = 0; i < n; ++i) nodes.push_back({BK::In, {}});
    for (unsigned i = 0; i < n; ++i) nodes.push_back({BK::NIn, {}});
    true_id = add({BK::True, {}});
    false_id = add({BK::False, {}});
  }

  uint32_t add(BNode n) {
    nodes.push_back(std::move(n));
    return static_cast<uint32_t>(nodes.size() - 1);
  }

  Wire wtrue() { return {true_id, false_id}; }
  Wire wfalse() { return {false_id, true_id}; }
  Wire winput(unsigned i) { return {i, n_inputs + i}; }

  uint32_t gate(BK k, std::vector<uint32_t> preds) {
    if (k == BK::And || k == BK::Or) {
      uint32_t absorb = k == BK::And ? false_id : true_id;
      uint32_t ident = k == BK::And ? true_id : false_id;
      std::vector<uint32_t> kept;
      for (uint32_t p : preds) {
        if (p == absorb) return absorb;
        if (p == ident) continue;
        kept.push_back(p);
      }
      std::sort(kept.begin(), kept.end());
      kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
      if (kept.empty()) return ident;
      if (kept.size() == 1) return kept[0];
      preds = std::move(kept);
    } else {
      assert(variant == Variant::TC && "majority gate in an AC lowering");
      if (preds.size() == 1) return preds[0];
      bool all_const = true;
      size_t ones = 0;
      for (uint32_t p : preds) {
        if (p == true_id) ++ones;
        else if (p != false_id) all_const = false;
      }
      if (all_const) return 2 * ones > preds.size() ? true_id : false_id;
      std::sort(preds.begin(), preds.end());  // keep multiplicity
    }
    std::string key;
    key.reserve(1 + preds.size() * 4);
    key.push_back(static_cast<char>(k));
    for (uint32_t p : preds)
      key.append(reinterpret_cast<const char*>(&p), 4);
    auto it = cons.find(key);
    if (it != cons.end()) return it->second;
    uint32_t id = add({k, std::move(preds)});
    cons.emplace(std::move(key), id);
    return id;
  }

  uint32_t g_and(std::vector<uint32_t> p) { return gate(BK::And, std::move(p)); }
  uint32_t g_or(std::vector<uint32_t> p) { return gate(BK::Or, std::move(p)); }

  Wire wand(const std::vector<Wire>& ws) {
    std::vector<uint32_t> p, n;
    for (const Wire& w : ws) { p.push_back(w.pos); n.push_back(w.neg); }
    return {g_and(std::move(p)), g_or(std::move(n))};
  }
  Wire wor(const std::vector<Wire>& ws) {
    std::vector<uint32_t> p, n;
    for (const Wire& w : ws) { p.push_back(w.pos); n.push_back(w.neg); }
    return {g_or(std::move(p)), g_and(std::move(n))};
  }
  Wire wand2(Wire a, Wire b) { return wand({a, b}); }
  Wire wor2(Wire a, Wire b) { return wor({a, b}); }
  static Wire wnot(Wire a) { return {a.neg, a.pos}; }
  Wire wxor2(Wire a, Wire b) {
    return wor2(wand2(a, wnot(b)), wand2(wnot(a), b));
  }
  Wire weq2(Wire a, Wire b) { return wnot(wxor2(a, b)); }
  Wire wmux(Wire s, Wire a, Wire b) {  // s ? a : b
    return wor2(wand2(s, a), wand2(wnot(s), b));
  }

  // [#true among bits >= r]
  Wire threshold(const std::vector<Wire>& bits, size_t r) {
    size_t q = bits.size();
    if (r == 0) return wtrue();
    if (r > q) return wfalse();
    auto rail = [&](bool positive, size_t rr) {
      // positive rail computes [#true >= rr] over the positive rails;
      // complement rail computes [#false >= q - r + 1] over the negations.
      std::vector<uint32_t> preds;
      for (const Wire& w : bits) preds.push_back(positive ? w.pos : w.neg);
      size_t need = 2 * rr;
      if (q + 1 >= need) {
        for (size_t i = 0; i < q + 1 - need; ++i) preds.push_back(true_id);
      } else {
        for (size_t i = 0; i < need - (q + 1); ++i) preds.push_back(false_id);
      }
      return gate(BK::Maj, std::move(preds));
    };
    return {rail(true, r), rail(false, q - r + 1)};
  }
};

struct Num {
  std::vector<Wire> mag;  // LSB first
  Wire sign;

  unsigned width() const { return static_cast<unsigned>(mag.size()); }
};

// ---------------------------------------------------------------------------
// Number blocks (all constant layer count, unbounded fan-in)

struct NumOps {
  Builder& b;

  Wire nonzero(const Num& a) { return b.wor(a.mag); }

  Num resize(Num a, unsigned w) {
    while (a.mag.size() < w) a.mag.push_back(b.wfalse());
    a.mag.resize(w);
    // keep -0 normalized when truncation can zero the magnitude
    a.sign = b.wand2(a.sign, nonzero(a));
    return a;
  }

  Num constant(const Value& v, unsigned w) {
    Num n;
    for (unsigned i = 0; i < w; ++i)
      n.mag.push_back(bit_of(v, i) ? b.wtrue() : b.wfalse());
    n.sign = v < 0 ? b.wtrue() : b.wfalse();
    return n;
  }

  // unsigned |a| + |b| with carry-lookahead; result width max+1
  std::vector<Wire> add_mag(std::vector<Wire> a, std::vector<Wire> bv,
                            bool initial_carry = false) {
    size_t w = std::max(a.size(), bv.size());
    while (a.size() < w) a.push_back(b.wfalse());
    while (bv.size() < w) bv.push_back(b.wfalse());
    std::vector<Wire> gen(w), prop(w);
    for (size_t i = 0; i < w; ++i) {
      gen[i] = b.wand2(a[i], bv[i]);
      prop[i] = b.wor2(a[i], bv[i]);
    }
    std::vector<Wire> carry(w + 1);
    Wire c0 = initial_carry ? b.wtrue() : b.wfalse();
    carry[0] = c0;
    for (size_t i = 1; i <= w; ++i) {
      std::vector<Wire> terms;
      for (size_t j = 0; j < i; ++j) {
        std::vector<Wire> chain{gen[j]};
        for (size_t l = j + 1; l < i; ++l) chain.push_back(prop[l]);
        terms.push_back(b.wand(chain));
      }
      if (initial_carry) {
        std::vector<Wire> chain;
        for (size_t l = 0; l < i; ++l) chain.push_back(prop[l]);
        terms.push_back(b.wand(chain));
      }
      carry[i] = b.wor(terms);
    }
    std::vector<Wire> out(w + 1);
    for (size_t i = 0; i < w; ++i) {
      // a ^ b ^ c as a four-minterm disjunction
      Wire x = a[i], y = bv[i], c = carry[i];
      out[i] = b.wor({b.wand({x, Builder::wnot(y), Builder::wnot(c)}),
                      b.wand({Builder::wnot(x), y, Builder::wnot(c)}),
                      b.wand({Builder::wnot(x), Builder::wnot(y), c}),
                      b.wand({x, y, c})});
    }
    out[w] = carry[w];
    return out;
  }

  // x + bump for a single carry bit: O(W) gates via prefix products
  std::vector<Wire> add_inc(const std::vector<Wire>& x, Wire bump) {
    size_t w = x.size();
    std::vector<Wire> out(w + 1);
    Wire carry = bump;
    for (size_t i = 0; i < w; ++i) {
      std::vector<Wire> chain{bump};
      for (size_t j = 0; j < i; ++j) chain.push_back(x[j]);
      carry = b.wand(chain);
      out[i] = b.wor2(b.wand2(x[i], Builder::wnot(carry)),
                      b.wand2(Builder::wnot(x[i]), carry));
    }
    std::vector<Wire> full{bump};
    for (size_t j = 0; j < w; ++j) full.push_back(x[j]);
    out[w] = b.wand(full);
    return out;
  }

  // |a| - |b| for |a| >= |b| via complement addition
  std::vector<Wire> sub_mag(std::vector<Wire> a, std::vector<Wire> bv) {
    size_t w = std::max(a.size(), bv.size());
    while (a.size() < w) a.push_back(b.wfalse());
    while (bv.size() < w) bv.push_back(b.wfalse());
    std::vector<Wire> bneg(w);
    for (size_t i = 0; i < w; ++i) bneg[i] = Builder::wnot(bv[i]);
    auto r = add_mag(a, bneg, true);
    r.resize(w);  // discard the wrap carry
    return r;
  }

  Wire geq_mag(std::vector<Wire> a, std::vector<Wire> bv) {
    size_t w = std::max(a.size(), bv.size());
    while (a.size() < w) a.push_back(b.wfalse());
    while (bv.size() < w) bv.push_back(b.wfalse());
    if (w == 0) return b.wtrue();
    std::vector<Wire> eq(w);
    for (size_t i = 0; i < w; ++i) eq[i] = b.weq2(a[i], bv[i]);
    std::vector<Wire> terms;
    for (size_t i = 0; i < w; ++i) {
      std::vector<Wire> t{a[i], Builder::wnot(bv[i])};
      for (size_t j = i + 1; j < w; ++j) t.push_back(eq[j]);
      terms.push_back(b.wand(t));
    }
    terms.push_back(b.wand(eq));
    return b.wor(terms);
  }

  Num add(const Num& x, const Num& y) {
    unsigned w = std::max(x.width(), y.width()) + 1;
    Wire same = b.weq2(x.sign, y.sign);
    auto sum = add_mag(x.mag, y.mag);
    Wire xbig = geq_mag(x.mag, y.mag);
    std::vector<Wire> big(std::max(x.width(), y.width())),
        small(std::max(x.width(), y.width()));
    for (size_t i = 0; i < big.size(); ++i) {
      Wire xi = i < x.mag.size() ? x.mag[i] : b.wfalse();
      Wire yi = i < y.mag.size() ? y.mag[i] : b.wfalse();
      big[i] = b.wmux(xbig, xi, yi);
      small[i] = b.wmux(xbig, yi, xi);
    }
    auto diff = sub_mag(big, small);
    Num r;
    for (unsigned i = 0; i < w; ++i) {
      Wire s = i < sum.size() ? sum[i] : b.wfalse();
      Wire d = i < diff.size() ? diff[i] : b.wfalse();
      r.mag.push_back(b.wmux(same, s, d));
    }
    Wire sign = b.wmux(same, x.sign, b.wmux(xbig, x.sign, y.sign));
    r.sign = b.wand2(sign, b.wor(r.mag));
    return r;
  }

  Num negate(const Num& a) {
    Num r = a;
    r.sign = b.wand2(Builder::wnot(a.sign), nonzero(a));
    return r;
  }

  Num sub(const Num& x, const Num& y) { return add(x, negate(y)); }

  Num div2(const Num& a) {
    // floor toward -inf: shift the magnitude, then +1 when negative and odd
    Num r;
    for (size_t i = 1; i < a.mag.size(); ++i) r.mag.push_back(a.mag[i]);
    if (r.mag.empty()) r.mag.push_back(b.wfalse());
    Wire bump = a.mag.empty() ? b.wfalse() : b.wand2(a.sign, a.mag[0]);
    auto inc = add_inc(r.mag, bump);
    inc.resize(a.mag.size());  // |x|/2 rounded up still fits
    Num out;
    out.mag = inc;
    out.sign = b.wand2(a.sign, b.wor(out.mag));
    return out;
  }

  // one-hot length: lens[v] = [len(|a|) = v], v in 0..width
  std::vector<Wire> len_onehot(const Num& a) {
    unsigned w = a.width();
    std::vector<Wire> ls(w + 1);
    for (unsigned v = 0; v <= w; ++v) {
      if (v == 0) {
        std::vector<Wire> negs;
        for (const Wire& m : a.mag) negs.push_back(Builder::wnot(m));
        ls[0] = b.wand(negs);
      } else {
        std::vector<Wire> t{a.mag[v - 1]};
        for (unsigned j = v; j < w; ++j) t.push_back(Builder::wnot(a.mag[j]));
        ls[v] = b.wand(t);
      }
    }
    return ls;
  }

  Num onehot_to_num(const std::vector<Wire>& oh, unsigned width) {
    Num r;
    for (unsigned bit = 0; bit < width; ++bit) {
      std::vector<Wire> sel;
      for (size_t v = 0; v < oh.size(); ++v)
        if ((v >> bit) & 1) sel.push_back(oh[v]);
      r.mag.push_back(b.wor(sel));
    }
    r.sign = b.wfalse();
    return r;
  }

  Num length(const Num& a) {
    auto oh = len_onehot(a);
    unsigned w = std::max(1u, len(Value(a.width())));
    return onehot_to_num(oh, w);
  }

  Num sgn(const Num& a) {
    Num r;
    r.mag.push_back(b.wand2(b.wor(a.mag), Builder::wnot(a.sign)));
    r.sign = b.wfalse();
    return r;
  }

  // [x > y] as a comparator; sg(Sub(x,y)) lowers here so the boolean glue
  // (geq, eq, and, or) costs O(W) gates instead of a full subtractor
  Num sgn_gt(const Num& x, const Num& y) {
    Wire mgt_xy = Builder::wnot(geq_mag(y.mag, x.mag));  // |x| > |y|
    Wire mgt_yx = Builder::wnot(geq_mag(x.mag, y.mag));
    Wire pos_neg = b.wand2(Builder::wnot(x.sign), y.sign);
    Wire both_pos = b.wand({Builder::wnot(x.sign), Builder::wnot(y.sign), mgt_xy});
    Wire both_neg = b.wand({x.sign, y.sign, mgt_yx});
    Num r;
    r.mag.push_back(b.wor({pos_neg, both_pos, both_neg}));
    r.sign = b.wfalse();
    return r;
  }

  // amounts: (shift, selector) pairs, exactly one selector true at runtime
  Num shift_left(const Num& a, const std::vector<std::pair<unsigned, Wire>>& amounts,
                 unsigned out_w) {
    Num r;
    r.mag.resize(out_w);
    for (unsigned j = 0; j < out_w; ++j) {
      std::vector<Wire> parts;
      for (const auto& [s, sel] : amounts)
        if (j >= s && j - s < a.mag.size())
          parts.push_back(b.wand2(sel, a.mag[j - s]));
      r.mag[j] = b.wor(parts);
    }
    r.sign = b.wand2(a.sign, b.wor(r.mag));
    return r;
  }

  Num shift_right_floor(const Num& a,
                        const std::vector<std::pair<unsigned, Wire>>& amounts,
                        unsigned out_w) {
    std::vector<Wire> shifted(out_w, b.wfalse());
    for (unsigned j = 0; j < out_w; ++j) {
      std::vector<Wire> parts;
      for (const auto& [s, sel] : amounts)
        if (static_cast<size_t>(j) + s < a.mag.size())
          parts.push_back(b.wand2(sel, a.mag[j + s]));
      shifted[j] = b.wor(parts);
    }
    std::vector<Wire> dropped;
    for (const auto& [s, sel] : amounts) {
      std::vector<Wire> low;
      for (unsigned j = 0; j < s && j < a.mag.size(); ++j) low.push_back(a.mag[j]);
      dropped.push_back(b.wand2(sel, b.wor(low)));
    }
    Wire bump = b.wand2(a.sign, b.wor(dropped));
    auto inc = add_inc(shifted, bump);
    inc.resize(out_w);
    Num r;
    r.mag = inc;
    r.sign = b.wand2(a.sign, b.wor(r.mag));
    return r;
  }

  // binary digits of the count of true wires (TC only)
  std::vector<Wire> count_bits(const std::vector<Wire>& bits) {
    size_t q = bits.size();
    unsigned nb = std::max(1u, len(Value(q)));
    if (q == 0) return {b.wfalse()};
    if (q == 1) return {bits[0]};
    std::vector<Wire> thr(q + 2);
    for (size_t r = 1; r <= q; ++r) thr[r] = b.threshold(bits, r);
    thr[q + 1] = b.wfalse();
    std::vector<Wire> out(nb);
    for (unsigned bitpos = 0; bitpos < nb; ++bitpos) {
      std::vector<Wire> sel;
      for (size_t r = 1; r <= q; ++r)
        if ((r >> bitpos) & 1)
          sel.push_back(b.wand2(thr[r], Builder::wnot(thr[r + 1])));
      out[bitpos] = b.wor(sel);
    }
    return out;
  }

  // Sum of single-bit contributions placed at one-hot positions. Four
  // carry-save flattening rounds bring every column count to <= 2 for any
  // feasible operand count (< 2^64), then one lookahead addition finishes.
  Num multi_add(const std::vector<std::pair<Wire, std::vector<Wire>>>& items,
                unsigned out_w) {
    std::vector<std::vector<Wire>> col(out_w);
    for (const auto& [bit, posvec] : items)
      for (unsigned j = 0; j < posvec.size() && j < out_w; ++j)
        col[j].push_back(b.wand2(bit, posvec[j]));
    for (int round = 0; round < 4; ++round) {
      std::vector<std::vector<Wire>> next(out_w);
      for (unsigned j = 0; j < out_w; ++j) {
        if (col[j].size() <= 1) {
          for (const Wire& w : col[j]) next[j].push_back(w);
          continue;
        }
        auto bits = count_bits(col[j]);
        for (unsigned bpos = 0; bpos < bits.size(); ++bpos)
          if (j + bpos < out_w) next[j + bpos].push_back(bits[bpos]);
      }
      col = std::move(next);
    }
    std::vector<Wire> x(out_w, b.wfalse()), y(out_w, b.wfalse());
    for (unsigned j = 0; j < out_w; ++j) {
      assert(col[j].size() <= 2 && "flattening rounds exhausted");
      if (col[j].size() >= 1) x[j] = col[j][0];
      if (col[j].size() == 2) y[j] = col[j][1];
    }
    auto sum = add_mag(x, y);
    sum.resize(out_w);
    Num r;
    r.mag = sum;
    r.sign = b.wfalse();
    return r;
  }

  Num mux(Wire s, const Num& a, const Num& c) {
    unsigned w = std::max(a.width(), c.width());
    Num r;
    for (unsigned i = 0; i < w; ++i) {
      Wire ai = i < a.mag.size() ? a.mag[i] : b.wfalse();
      Wire ci = i < c.mag.size() ? c.mag[i] : b.wfalse();
      r.mag.push_back(b.wmux(s, ai, ci));
    }
    r.sign = b.wmux(s, a.sign, c.sign);
    return r;
  }
};

// ---------------------------------------------------------------------------
// Term lowering

struct Blocks {
  Builder& b;
  NumOps ops;
  WidthCtx& wid;
  std::map<std::vector<uint64_t>, Num> cache;

  Blocks(Builder& bb, WidthCtx& w) : b(bb), ops{bb}, wid(w) {}

  static std::vector<unsigned> widths_of(const std::vector<Num>& args) {
    std::vector<unsigned> w;
    for (const auto& a : args) w.push_back(a.width());
    return w;
  }

  Num run(const TermPtr& t, const std::vector<Num>& args) {
    std::vector<uint64_t> key{reinterpret_cast<uint64_t>(t.get())};
    for (const auto& a : args) {
      for (const Wire& m : a.mag) {
        key.push_back(m.pos);
        key.push_back(m.neg);
      }
      key.push_back(a.sign.pos);
      key.push_back(a.sign.neg);
      key.push_back(0xffffffffull);
    }
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Num out = ops.resize(lower(t, args), wid.width(t, widths_of(args)));
    cache.emplace(std::move(key), out);
    return out;
  }

  Num lower(const TermPtr& t, const std::vector<Num>& args) {
    switch (t->kind) {
      case TermKind::Const0: return ops.constant(0, 1);
      case TermKind::Const1: return ops.constant(1, 1);
      case TermKind::Length: return ops.length(run(t->kids[0], args));
      case TermKind::Sign:
        if (t->kids[0]->kind == TermKind::Sub)
          return ops.sgn_gt(run(t->kids[0]->kids[0], args),
                            run(t->kids[0]->kids[1], args));
        return ops.sgn(run(t->kids[0], args));
      case TermKind::Add: return ops.add(run(t->kids[0], args), run(t->kids[1], args));
      case TermKind::Sub: return ops.sub(run(t->kids[0], args), run(t->kids[1], args));
      case TermKind::Div2: return ops.div2(run(t->kids[0], args));
      case TermKind::Times: return lower_times(t, args);
      case TermKind::Proj: return args.at(t->proj_index - 1);
      case TermKind::Compose: {
        std::vector<Num> inner;
        for (size_t i = 1; i < t->kids.size(); ++i)
          inner.push_back(run(t->kids[i], args));
        return run(t->kids[0], inner);
      }
      case TermKind::Oracle:
        throw CompileError("UnboundOracle",
                           "oracle '" + t->oracle_name + "' cannot be compiled");
      case TermKind::Ode1: return lower_ode1(t, args);
      case TermKind::Ode2: return lower_ode2(t, args, false);
      case TermKind::Ode2Star: return lower_ode2(t, args, true);
      case TermKind::Ode3: return lower_ode3(t, args);
      case TermKind::Ode4: return lower_ode4(t, args);
      case TermKind::Ode1Star: return lower_ode1_star(t, args);
    }
    throw std::logic_error("unreachable");
  }

  std::vector<Num> params_of(const std::vector<Num>& args) {
    return {args.begin() + 1, args.end()};
  }

  // h instantiated at the hardwired jump point alpha(u), u < width(x)
  std::vector<Num> h_blocks(const TermPtr& h, const std::vector<Num>& args,
                            unsigned wx) {
    std::vector<Num> hs;
    auto ps = params_of(args);
    for (unsigned u = 0; u < wx; ++u) {
      std::vector<Num> ha{ops.constant(alpha(u), wx)};
      for (const auto& p : ps) ha.push_back(p);
      hs.push_back(run(h, ha));
    }
    return hs;
  }

  // [len(x) > u] selectors from the one-hot lengths
  std::vector<Wire> strict_above(const std::vector<Wire>& lens) {
    std::vector<Wire> gs(lens.size());
    for (size_t u = 0; u < lens.size(); ++u) {
      std::vector<Wire> hi(lens.begin() + u + 1, lens.end());
      gs[u] = b.wor(hi);
    }
    return gs;
  }

  Num lower_ode1(const TermPtr& t, const std::vector<Num>& args) {
    const Num& X = args[0];
    unsigned wx = X.width();
    auto ps = params_of(args);
    Num G = run(t->kids[0], ps);
    auto hs = h_blocks(t->kids[1], args, wx);
    auto lens = ops.len_onehot(X);
    unsigned out_w = G.width() + wx;

    std::vector<std::pair<unsigned, Wire>> amounts;
    for (unsigned v = 0; v <= wx; ++v) amounts.push_back({v, lens[v]});
    Num gs = ops.shift_left(G, amounts, out_w);

    // appended bit of weight j comes from the u with len(x) = u+j+1
    Num S;
    S.mag.resize(wx, b.wfalse());
    for (unsigned j = 0; j < wx; ++j) {
      std::vector<Wire> parts;
      for (unsigned u = 0; u + j + 1 <= wx; ++u)
        parts.push_back(b.wand2(lens[u + j + 1], hs[u].mag[0]));
      S.mag[j] = b.wor(parts);
    }
    S.sign = b.wfalse();
    return ops.add(gs, S);
  }

  Num lower_ode2(const TermPtr& t, const std::vector<Num>& args, bool star) {
    const Num& X = args[0];
    unsigned wx = X.width();
    auto ps = params_of(args);
    Num G = run(t->kids[0], ps);
    Num K = run(t->kids[2], ps);
    auto hs = h_blocks(t->kids[1], args, wx);
    auto lens = ops.len_onehot(X);
    auto klen = ops.len_onehot(K);
    unsigned wk = K.width();
    unsigned out_w = wid.width(t, widths_of(args));

    // pair selectors [len(k)=w & len(x)=v]
    std::vector<std::vector<Wire>> sel(wk + 1, std::vector<Wire>(wx + 1));
    for (unsigned w = 0; w <= wk; ++w)
      for (unsigned v = 0; v <= wx; ++v)
        sel[w][v] = b.wand2(klen[w], lens[v]);

    // g placed at len(k)*len(x)
    std::map<unsigned, std::vector<Wire>> gsel;
    for (unsigned w = 0; w <= wk; ++w)
      for (unsigned v = 0; v <= wx; ++v) gsel[w * v].push_back(sel[w][v]);
    std::vector<std::pair<unsigned, Wire>> gamounts;
    for (auto& [amt, sels] : gsel) gamounts.push_back({amt, b.wor(sels)});
    Num gs = ops.shift_left(G, gamounts, out_w);

    // h(alpha(u)) placed at len(k)*(len(x)-u-1)
    Num S;
    S.mag.resize(out_w, b.wfalse());
    std::vector<std::vector<Wire>> sparts(out_w);
    for (unsigned u = 0; u < wx; ++u) {
      std::map<unsigned, std::vector<Wire>> pos;
      for (unsigned w = 0; w <= wk; ++w)
        for (unsigned v = u + 1; v <= wx; ++v)
          pos[w * (v - u - 1)].push_back(sel[w][v]);
      for (auto& [amt, sels] : pos) {
        if (amt >= out_w) continue;
        sparts[amt].push_back(b.wand2(hs[u].mag[0], b.wor(sels)));
      }
    }
    for (unsigned j = 0; j < out_w; ++j) S.mag[j] = b.wor(sparts[j]);
    S.sign = b.wfalse();
    Num placed = ops.add(gs, S);
    if (!star) return placed;

    // k = 0: the sum degenerates to g + (number of h-ones among u < len(x))
    auto above = strict_above(lens);
    std::vector<Wire> hbits;
    for (unsigned u = 0; u < wx; ++u)
      hbits.push_back(b.wand2(hs[u].mag[0], above[u]));
    auto cnt = ops.count_bits(hbits);
    Num cnum;
    cnum.mag = cnt;
    cnum.sign = b.wfalse();
    Num counted = ops.add(G, cnum);
    return ops.mux(klen[0], counted, placed);
  }

  Num lower_ode3(const TermPtr& t, const std::vector<Num>& args) {
    const Num& X = args[0];
    auto ps = params_of(args);
    Num G = run(t->kids[0], ps);
    auto lens = ops.len_onehot(X);
    std::vector<std::pair<unsigned, Wire>> amounts;
    for (unsigned v = 0; v < lens.size(); ++v) amounts.push_back({v, lens[v]});
    return ops.shift_right_floor(G, amounts, G.width());
  }

  Num lower_ode4(const TermPtr& t, const std::vector<Num>& args) {
    const Num& X = args[0];
    unsigned wx = X.width();
    auto ps = params_of(args);
    Num G = run(t->kids[0], ps);
    Num K = run(t->kids[1], ps);
    auto lens = ops.len_onehot(X);
    auto klen = ops.len_onehot(K);
    std::map<unsigned, std::vector<Wire>> amap;
    for (unsigned w = 0; w <= K.width(); ++w)
      for (unsigned v = 0; v <= wx; ++v)
        amap[w * v].push_back(b.wand2(klen[w], lens[v]));
    std::vector<std::pair<unsigned, Wire>> amounts;
    for (auto& [amt, sels] : amap) amounts.push_back({amt, b.wor(sels)});
    unsigned out_w = wid.width(t, widths_of(args));
    if (t->dir == Ode4Dir::Minus)
      return ops.shift_right_floor(G, amounts, out_w);
    return ops.shift_left(G, amounts, out_w);
  }

  Num lower_ode1_star(const TermPtr& t, const std::vector<Num>& args) {
    const Num& X = args[0];
    unsigned wx = X.width();
    auto ps = params_of(args);
    Num G = run(t->kids[0], ps);
    auto hs = h_blocks(t->kids[1], args, wx);
    auto ks = h_blocks(t->kids[2], args, wx);
    auto lens = ops.len_onehot(X);
    auto above = strict_above(lens);
    unsigned out_w = wid.width(t, widths_of(args));

    std::vector<Wire> kb(wx);
    for (unsigned u = 0; u < wx; ++u)
      kb[u] = b.wand2(ks[u].mag[0], above[u]);

    // one-hot suffix counts c_u = #{t > u : k(alpha(t)) = 1}
    auto suffix_onehot = [&](int u) {
      std::vector<Wire> set(kb.begin() + (u + 1), kb.end());
      size_t q = set.size();
      std::vector<Wire> oh(wx + 1, b.wfalse());
      std::vector<Wire> thr(q + 2);
      for (size_t r = 1; r <= q; ++r) thr[r] = b.threshold(set, r);
      thr[0] = b.wtrue();
      thr[q + 1] = b.wfalse();
      for (size_t r = 0; r <= q; ++r)
        oh[r] = b.wand2(thr[r], Builder::wnot(thr[r + 1]));
      return oh;
    };

    std::vector<std::pair<Wire, std::vector<Wire>>> items;
    for (unsigned u = 0; u < wx; ++u) {
      Wire bit = b.wand2(hs[u].mag[0], above[u]);
      items.push_back({bit, suffix_onehot(static_cast<int>(u))});
    }
    Num N = ops.multi_add(items, out_w);

    auto c_init = suffix_onehot(-1);
    std::vector<std::pair<unsigned, Wire>> gamounts;
    for (unsigned r = 0; r <= wx; ++r) gamounts.push_back({r, c_init[r]});
    Num gs = ops.shift_left(G, gamounts, out_w);
    return ops.add(gs, N);
  }

  Num lower_times(const TermPtr& t, const std::vector<Num>& args) {
    Num A = run(t->kids[0], args);
    Num B = run(t->kids[1], args);
    unsigned out_w = A.width() + B.width();
    std::vector<std::pair<Wire, std::vector<Wire>>> items;
    for (unsigned i = 0; i < A.width(); ++i)
      for (unsigned j = 0; j < B.width(); ++j) {
        std::vector<Wire> pos(i + j + 1, b.wfalse());
        pos[i + j] = b.wtrue();
        items.push_back({b.wand2(A.mag[i], B.mag[j]), pos});
      }
    Num r = ops.multi_add(items, out_w);
    r.sign = b.wand2(b.wxor2(A.sign, B.sign), b.wor(r.mag));
    return r;
  }
};

// ---------------------------------------------------------------------------
// Normalization: slot gates into the alternation pattern, pad edges with
// single-predecessor buffers, lift outputs to the target depth, assign ids.

GateKind slot_kind(Variant v, unsigned level) {
  if (v == Variant::AC) return level % 2 == 1 ? GateKind::Or : GateKind::And;
  switch (level % 3) {
    case 1: return GateKind::Or;
    case 2: return GateKind::And;
    default: return GateKind::Maj;
  }
}

unsigned slot_for(Variant v, GateKind k, unsigned at_least) {
  unsigned l = std::max(1u, at_least);
  while (slot_kind(v, l) != k) ++l;
  return l;
}

unsigned legal_output_level(Variant v, unsigned at_least) {
  // outputs are And gates: even in AC, congruent to 2 mod 3 in TC
  return slot_for(v, GateKind::And, std::max(2u, at_least));
}

struct Normalizer {
  const Builder& b;
  Variant variant;

  struct NGate {
    GateKind kind;
    unsigned level;
    std::vector<int64_t> preds;  // normalized node handles
  };
  std::vector<NGate> out_gates;           // internal handles >= 2n
  std::vector<int64_t> handle_of;         // builder id -> handle (-1 unused)
  std::map<std::pair<int64_t, unsigned>, int64_t> lift_cache;
  unsigned n;

  explicit Normalizer(const Builder& bb) : b(bb), variant(bb.variant), n(bb.n_inputs) {}

  int64_t fresh(GateKind k, unsigned level, std::vector<int64_t> preds) {
    out_gates.push_back({k, level, std::move(preds)});
    return 2ll * n + static_cast<int64_t>(out_gates.size() - 1);
  }

  unsigned level_of(int64_t handle) const {
    if (handle < 2ll * n) return 0;
    return out_gates[static_cast<size_t>(handle - 2ll * n)].level;
  }

  int64_t lift(int64_t handle, unsigned to_level) {
    unsigned cur = level_of(handle);
    if (cur == to_level) return handle;
    auto key = std::make_pair(handle, to_level);
    auto it = lift_cache.find(key);
    if (it != lift_cache.end()) return it->second;
    int64_t below = lift(handle, to_level - 1);
    int64_t id = fresh(slot_kind(variant, to_level), to_level, {below});
    lift_cache.emplace(key, id);
    return id;
  }

  // Convert the builder graph reachable from `roots`; returns per-root final
  // handles at their natural levels.
  std::vector<int64_t> convert(const std::vector<uint32_t>& roots) {
    std::vector<char> reach(b.nodes.size(), 0);
    std::vector<uint32_t> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
      uint32_t id = stack.back();
      stack.pop_back();
      if (reach[id]) continue;
      reach[id] = 1;
      for (uint32_t p : b.nodes[id].preds) stack.push_back(p);
    }
    handle_of.assign(b.nodes.size(), -1);
    for (uint32_t id = 0; id < b.nodes.size(); ++id) {
      if (!reach[id]) continue;
      const BNode& nd = b.nodes[id];
      switch (nd.kind) {
        case BK::In:
          handle_of[id] = id;
          break;
        case BK::NIn:
          handle_of[id] = id;
          break;
        case BK::True:
          handle_of[id] = fresh(GateKind::Or, 1, {0, static_cast<int64_t>(n)});
          break;
        case BK::False: {
          int64_t a = lift(0, 1);
          int64_t c = lift(static_cast<int64_t>(n), 1);
          handle_of[id] = fresh(GateKind::And, 2, {a, c});
          break;
        }
        case BK::And:
        case BK::Or:
        case BK::Maj: {
          GateKind gk = nd.kind == BK::And   ? GateKind::And
                        : nd.kind == BK::Or ? GateKind::Or
                                            : GateKind::Maj;
          unsigned lo = 0;
          for (uint32_t p : nd.preds)
            lo = std::max(lo, level_of(handle_of[p]) + 1);
          unsigned lvl = slot_for(variant, gk, lo);
          std::vector<int64_t> preds;
          for (uint32_t p : nd.preds)
            preds.push_back(lift(handle_of[p], lvl - 1));
          handle_of[id] = fresh(gk, lvl, std::move(preds));
          break;
        }
      }
    }
    std::vector<int64_t> rh;
    for (uint32_t r : roots) rh.push_back(handle_of[r]);
    return rh;
  }

  Circuit finish(const std::vector<int64_t>& out_handles, unsigned target_depth,
                 unsigned k_hint) {
    // output gates at the target depth; a non-input gate already there can
    // serve directly, otherwise buffer up
    std::vector<int64_t> outs;
    std::set<int64_t> taken;
    for (int64_t h : out_handles) {
      if (h >= 2ll * n && level_of(h) == target_depth) {
        if (!taken.count(h)) {
          outs.push_back(h);
          taken.insert(h);
        } else {
          // duplicate gate for a repeated output wire
          const NGate& g = out_gates[static_cast<size_t>(h - 2ll * n)];
          int64_t copy = fresh(g.kind, target_depth, g.preds);
          outs.push_back(copy);
          taken.insert(copy);
        }
        continue;
      }
      int64_t below = lift(h, target_depth - 1);
      int64_t fresh_gate =
          fresh(slot_kind(variant, target_depth), target_depth, {below});
      outs.push_back(fresh_gate);
      taken.insert(fresh_gate);
    }

    // keep only gates reachable from outputs
    size_t total = out_gates.size();
    std::vector<char> live(total, 0);
    std::vector<int64_t> stack2 = outs;
    while (!stack2.empty()) {
      int64_t h = stack2.back();
      stack2.pop_back();
      if (h < 2ll * n) continue;
      size_t ix = static_cast<size_t>(h - 2ll * n);
      if (live[ix]) continue;
      live[ix] = 1;
      for (int64_t p : out_gates[ix].preds) stack2.push_back(p);
    }

    uint64_t m = outs.size();
    uint64_t internal = 0;
    std::set<int64_t> outset(outs.begin(), outs.end());
    for (size_t i = 0; i < total; ++i)
      if (live[i] && !outset.count(2ll * n + static_cast<int64_t>(i))) ++internal;

    Circuit c;
    c.variant = variant;
    c.n_inputs = n;
    c.depth = target_depth;
    c.k = std::max(2u, k_hint);
    while (c.id_space() < 2ull * n + internal + m) ++c.k;
    uint64_t space = c.id_space();

    std::map<int64_t, uint64_t> idmap;
    for (unsigned i = 0; i < 2 * n; ++i) idmap[i] = i;
    uint64_t next = 2 * n;
    for (size_t i = 0; i < total; ++i) {
      int64_t h = 2ll * n + static_cast<int64_t>(i);
      if (!live[i] || outset.count(h)) continue;
      idmap[h] = next++;
    }
    for (size_t j = 0; j < outs.size(); ++j) idmap[outs[j]] = space - m + j;

    for (unsigned i = 0; i < n; ++i)
      c.gates.push_back({i, 0, GateKind::InputPos, {}});
    for (unsigned i = 0; i < n; ++i)
      c.gates.push_back({n + i, 0, GateKind::InputNeg, {}});
    for (size_t i = 0; i < total; ++i) {
      int64_t h = 2ll * n + static_cast<int64_t>(i);
      if (!live[i]) continue;
      const NGate& g = out_gates[i];
      Gate gg{idmap[h], g.level, g.kind, {}};
      for (int64_t p : g.preds) gg.preds.push_back(idmap[p]);
      std::sort(gg.preds.begin(), gg.preds.end());
      c.gates.push_back(std::move(gg));
    }
    std::sort(c.gates.begin(), c.gates.end(),
              [](const Gate& a, const Gate& bg) { return a.id < bg.id; });
    c.outputs.clear();
    for (uint64_t j = 0; j < m; ++j) c.outputs.push_back(space - m + j);
    return c;
  }
};

}  // namespace

// ---------------------------------------------------------------------------

unsigned WidthPlan::output_width() const {
  return lookup(root.get(), arg_widths);
}

unsigned WidthPlan::lookup(const Term* t, const std::vector<unsigned>& argw) const {
  auto it = widths.find(std::make_pair(t, argw));
  if (it == widths.end())
    throw CompileError("PlanTooNarrow", "width plan is missing a subterm entry");
  return it->second;
}

WidthPlan infer_widths(const CheckedTerm& t, const std::vector<unsigned>& input_widths) {
  if (input_widths.size() != t.arity())
    throw CompileError("PlanTooNarrow", "one width per argument required");
  for (unsigned w : input_widths)
    if (w == 0) throw CompileError("PlanTooNarrow", "zero-width argument");
  WidthCtx ctx;
  ctx.width(t.term(), input_widths);
  WidthPlan p;
  p.root = t.term();
  p.arg_widths = input_widths;
  p.widths = std::move(ctx.memo);
  return p;
}

bool requires_tc(const TermPtr& t) {
  if (t->kind == TermKind::Times || t->kind == TermKind::Ode1Star ||
      t->kind == TermKind::Ode2Star)
    return true;
  for (const auto& k : t->kids)
    if (requires_tc(k)) return true;
  return false;
}

Circuit compile(const CheckedTerm& t, const WidthPlan& plan) {
  Variant v = requires_tc(t.term()) || is_tc_mode(t.mode().id) ? Variant::TC
                                                               : Variant::AC;
  return compile(t, plan, v);
}

Circuit compile(const CheckedTerm& t, const WidthPlan& plan, Variant variant) {
  if (variant == Variant::AC && requires_tc(t.term()))
    throw CompileError("ModeError",
                       "term needs majority gates; compile it as a TC circuit");
  if (plan.root != t.term())
    throw CompileError("PlanTooNarrow", "plan was built for a different term");

  WidthCtx wid;
  wid.width(t.term(), plan.arg_widths);
  for (const auto& [key, w] : wid.memo) {
    auto it = plan.widths.find(key);
    if (it == plan.widths.end() || it->second < w)
      throw CompileError("PlanTooNarrow", "plan narrower than required widths");
  }

  unsigned arity = t.arity();
  unsigned n_bits = 0;
  for (unsigned w : plan.arg_widths) n_bits += w + 1;
  if (n_bits < 2) n_bits = 2;  // phantom inputs for closed terms

  Builder b(variant, n_bits);
  Blocks blocks(b, wid);

  std::vector<Num> args;
  unsigned at = 0;
  for (unsigned i = 0; i < arity; ++i) {
    Num a;
    for (unsigned j = 0; j < plan.arg_widths[i]; ++j)
      a.mag.push_back(b.winput(at + j));
    a.sign = b.winput(at + plan.arg_widths[i]);
    at += plan.arg_widths[i] + 1;
    args.push_back(std::move(a));
  }

  Num root = blocks.ops.resize(blocks.run(t.term(), args), plan.output_width());

  DepthCtx dctx;
  std::vector<unsigned> argd(arity, 0);
  unsigned budget = dctx.depth(t.term(), argd);
  unsigned target = legal_output_level(variant, budget + 1);

  Normalizer norm(b);
  std::vector<uint32_t> roots;
  for (const Wire& w : root.mag) roots.push_back(w.pos);
  roots.push_back(root.sign.pos);
  auto handles = norm.convert(roots);
  unsigned natural = 0;
  for (int64_t h : handles) natural = std::max(natural, norm.level_of(h));
  if (natural > target)
    throw std::logic_error("depth budget underestimates the lowering (" +
                           std::to_string(natural) + " vs " +
                           std::to_string(target) + ")");
  return norm.finish(handles, target, 2);
}

std::vector<DepthProfileEntry> depth_profile(const CheckedTerm& t,
                                             const std::vector<unsigned>& widths) {
  std::vector<DepthProfileEntry> out;
  for (unsigned w : widths) {
    WidthPlan plan = infer_widths(t, std::vector<unsigned>(t.arity(), w));
    Circuit c = compile(t, plan);
    auto s = stats(c);
    out.push_back({w, s.depth, s.size});
  }
  return out;
}

BitVector pack_args(const Circuit& c, const WidthPlan& plan,
                    const std::vector<Value>& args) {
  BitVector bv;
  bv.bits.assign(c.n_inputs, false);
  unsigned at = 0;
  for (size_t i = 0; i < args.size(); ++i) {
    const Value& v = args[i];
    for (unsigned j = 0; j < plan.arg_widths[i]; ++j)
      bv.bits[at + j] = bit_of(v, j) != 0;
    bv.bits[at + plan.arg_widths[i]] = v < 0;
    at += plan.arg_widths[i] + 1;
  }
  return bv;
}

Value unpack_output(const WidthPlan& plan, const BitVector& out) {
  unsigned w = plan.output_width();
  Value mag = 0;
  for (unsigned j = 0; j < w; ++j)
    if (out.bits.at(j)) boost::multiprecision::bit_set(mag, j);
  return out.bits.at(w) ? Value(-mag) : mag;
}

bool args_fit(const WidthPlan& plan, const std::vector<Value>& args) {
  if (args.size() != plan.arg_widths.size()) return false;
  for (size_t i = 0; i < args.size(); ++i)
    if (len(args[i]) > plan.arg_widths[i]) return false;
  return true;
}

}  // namespace odecirc
