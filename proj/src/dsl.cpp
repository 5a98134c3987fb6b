#include "odecirc/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <vector>

#include "odecirc/stdterms.hpp"

namespace odecirc {

namespace {

struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> items;
  size_t pos = 0;
};

struct Lexer {
  const std::string& text;
  size_t at = 0;

  void skip_ws() {
    while (at < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[at]))) {
        ++at;
      } else if (text[at] == ';') {
        while (at < text.size() && text[at] != '\n') ++at;
      } else {
        break;
      }
    }
  }

  SExpr parse() {
    skip_ws();
    if (at >= text.size())
      throw ParseError("ParseError", at, "unexpected end of input");
    size_t start = at;
    if (text[at] == '(') {
      ++at;
      SExpr e;
      e.pos = start;
      while (true) {
        skip_ws();
        if (at >= text.size())
          throw ParseError("ParseError", at, "missing ')'");
        if (text[at] == ')') {
          ++at;
          break;
        }
        e.items.push_back(parse());
      }
      return e;
    }
    if (text[at] == ')')
      throw ParseError("ParseError", at, "unexpected ')'");
    SExpr e;
    e.is_atom = true;
    e.pos = start;
    while (at < text.size() && !std::isspace(static_cast<unsigned char>(text[at])) &&
           text[at] != '(' && text[at] != ')' && text[at] != ';')
      e.atom.push_back(text[at++]);
    return e;
  }
};

bool parse_unsigned(const std::string& s, unsigned& out) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    return false;
  out = static_cast<unsigned>(std::stoul(s));
  return true;
}

std::optional<unsigned> var_index(const std::string& s) {
  if (s.size() < 2 || s[0] != 'x') return std::nullopt;
  unsigned i;
  if (!parse_unsigned(s.substr(1), i)) return std::nullopt;
  return i;
}

[[noreturn]] void bad(const SExpr& e, const std::string& msg) {
  throw ParseError("ParseError", e.pos, msg);
}

const SExpr& item(const SExpr& e, size_t i, const std::string& what) {
  if (i >= e.items.size()) bad(e, "missing " + what);
  return e.items[i];
}

void expect_items(const SExpr& e, size_t count, const std::string& form) {
  if (e.items.size() != count)
    bad(e, form + " expects " + std::to_string(count - 1) + " argument(s)");
}

// Smallest arity the expression can live at.
unsigned needed_arity(const SExpr& e) {
  if (e.is_atom) {
    if (e.atom == "0" || e.atom == "1") return 0;
    if (auto i = var_index(e.atom)) return *i;
    bad(e, "unknown atom '" + e.atom + "'");
  }
  if (e.items.empty()) bad(e, "empty form");
  const SExpr& head = item(e, 0, "operator");
  if (!head.is_atom) bad(e, "operator must be an atom");
  const std::string& op = head.atom;
  auto kid = [&](size_t i) -> const SExpr& { return item(e, i, "argument"); };

  if (op == "len" || op == "sg" || op == "div2") return needed_arity(kid(1));
  if (op == "+" || op == "-" || op == "*")
    return std::max(needed_arity(kid(1)), needed_arity(kid(2)));
  if (op == "proj") {
    unsigned p;
    if (e.items.size() != 3 || !kid(2).is_atom || !parse_unsigned(kid(2).atom, p))
      bad(e, "proj expects numeric index and arity");
    return p;
  }
  if (op == "comp") {
    unsigned a = 0;
    for (size_t i = 2; i < e.items.size(); ++i)
      a = std::max(a, needed_arity(e.items[i]));
    return a;
  }
  if (op == "ode1")
    return std::max({needed_arity(kid(1)) + 1, needed_arity(kid(2)), 1u});
  if (op == "ode2" || op == "ode2*")
    return std::max({needed_arity(kid(1)) + 1, needed_arity(kid(3)) + 1,
                     needed_arity(kid(2)), 1u});
  if (op == "ode3") return needed_arity(kid(1)) + 1;
  if (op == "ode4")
    return std::max(needed_arity(kid(1)), needed_arity(kid(2))) + 1;
  if (op == "ode1*")
    return std::max({needed_arity(kid(1)) + 1, needed_arity(kid(2)),
                     needed_arity(kid(3)), 1u});
  if (op == "oracle") {
    unsigned r;
    if (e.items.size() != 3 || !kid(2).is_atom || !parse_unsigned(kid(2).atom, r))
      bad(e, "oracle expects a name and an arity");
    return r;
  }
  if (op == "std") {
    if (e.items.size() != 2 || !kid(1).is_atom) bad(e, "std expects a name");
    auto nt = stdlib_lookup(kid(1).atom);
    if (!nt)
      throw ParseError("UnknownStdName", e.pos,
                       "no stdlib term named '" + kid(1).atom + "'");
    return nt->arity();
  }
  bad(e, "unknown operator '" + op + "'");
}

TermPtr resolve(const SExpr& e, unsigned q) {
  if (e.is_atom) {
    if (e.atom == "0") return t_const0(q);
    if (e.atom == "1") return t_const1(q);
    if (auto i = var_index(e.atom)) {
      if (*i < 1 || *i > q)
        bad(e, "x" + std::to_string(*i) + " outside arity " + std::to_string(q));
      return t_proj(*i, q);
    }
    bad(e, "unknown atom '" + e.atom + "'");
  }
  const std::string& op = e.items[0].atom;
  auto kid = [&](size_t i) -> const SExpr& { return item(e, i, "argument"); };

  if (op == "len") { expect_items(e, 2, op); return t_len(resolve(kid(1), q)); }
  if (op == "sg") { expect_items(e, 2, op); return t_sg(resolve(kid(1), q)); }
  if (op == "div2") { expect_items(e, 2, op); return t_div2(resolve(kid(1), q)); }
  if (op == "+") { expect_items(e, 3, op); return t_add(resolve(kid(1), q), resolve(kid(2), q)); }
  if (op == "-") { expect_items(e, 3, op); return t_sub(resolve(kid(1), q), resolve(kid(2), q)); }
  if (op == "*") { expect_items(e, 3, op); return t_times(resolve(kid(1), q), resolve(kid(2), q)); }
  if (op == "proj") {
    unsigned i, p;
    if (!parse_unsigned(kid(1).atom, i) || !parse_unsigned(kid(2).atom, p))
      bad(e, "proj expects numbers");
    if (p != q)
      bad(e, "projection arity " + std::to_string(p) + " differs from context " +
                 std::to_string(q));
    if (i < 1 || i > p) bad(e, "projection index out of range");
    return t_proj(i, p);
  }
  if (op == "comp") {
    if (e.items.size() < 2) bad(e, "comp expects a function");
    std::vector<TermPtr> args;
    for (size_t i = 2; i < e.items.size(); ++i)
      args.push_back(resolve(e.items[i], q));
    TermPtr f = resolve(kid(1), static_cast<unsigned>(args.size()));
    return t_comp(f, std::move(args));
  }
  if (op == "ode1") {
    expect_items(e, 3, op);
    return t_ode1(resolve(kid(1), q - 1), resolve(kid(2), q));
  }
  if (op == "ode2" || op == "ode2*") {
    expect_items(e, 4, op);
    TermPtr g = resolve(kid(1), q - 1);
    TermPtr h = resolve(kid(2), q);
    TermPtr k = resolve(kid(3), q - 1);
    return op == "ode2" ? t_ode2(g, h, k) : t_ode2_star(g, h, k);
  }
  if (op == "ode3") { expect_items(e, 2, op); return t_ode3(resolve(kid(1), q - 1)); }
  if (op == "ode4") {
    expect_items(e, 4, op);
    const SExpr& d = kid(3);
    Ode4Dir dir;
    if (d.is_atom && d.atom == "+") dir = Ode4Dir::Plus;
    else if (d.is_atom && d.atom == "-") dir = Ode4Dir::Minus;
    else if (d.is_atom && d.atom == "0") dir = Ode4Dir::Zero;
    else bad(d, "ode4 direction must be +, - or 0");
    return t_ode4(resolve(kid(1), q - 1), resolve(kid(2), q - 1), dir);
  }
  if (op == "ode1*") {
    expect_items(e, 4, op);
    return t_ode1_star(resolve(kid(1), q - 1), resolve(kid(2), q),
                       resolve(kid(3), q));
  }
  if (op == "oracle") {
    unsigned r;
    parse_unsigned(kid(2).atom, r);
    if (r != q)
      bad(e, "oracle arity " + std::to_string(r) + " differs from context");
    return t_oracle(kid(1).atom, r);
  }
  if (op == "std") {
    auto nt = stdlib_lookup(kid(1).atom);
    if (!nt)
      throw ParseError("UnknownStdName", e.pos,
                       "no stdlib term named '" + kid(1).atom + "'");
    if (nt->arity() != q)
      bad(e, "'" + kid(1).atom + "' has arity " + std::to_string(nt->arity()) +
                 ", context needs " + std::to_string(q));
    return nt->term;
  }
  bad(e, "unknown operator '" + op + "'");
}

}  // namespace

TermPtr parse_dsl(const std::string& text, std::optional<unsigned> arity_hint) {
  Lexer lx{text};
  SExpr e = lx.parse();
  lx.skip_ws();
  if (lx.at != text.size())
    throw ParseError("ParseError", lx.at, "trailing input after the term");
  unsigned need = needed_arity(e);
  unsigned q = arity_hint ? std::max(*arity_hint, need) : need;
  if (arity_hint && *arity_hint < need)
    throw ParseError("ParseError", e.pos,
                     "term needs arity " + std::to_string(need) +
                         ", got hint " + std::to_string(*arity_hint));
  try {
    return resolve(e, q);
  } catch (const TermError& te) {
    throw ParseError("ParseError", e.pos, te.what());
  }
}

}  // namespace odecirc
