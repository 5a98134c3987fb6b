#include "odecirc/term.hpp"

#include <sstream>

namespace odecirc {

namespace {

TermPtr mk(Term t) { return std::make_shared<const Term>(std::move(t)); }

[[noreturn]] void arity_error(const std::string& where, const std::string& detail) {
  throw TermError("InconsistentArity", where + ": " + detail);
}

unsigned same_arity(const char* where, const TermPtr& l, const TermPtr& r) {
  if (l->arity != r->arity)
    arity_error(where, "children have arities " + std::to_string(l->arity) +
                           " and " + std::to_string(r->arity));
  return l->arity;
}

}  // namespace

bool is_schema(TermKind k) {
  switch (k) {
    case TermKind::Ode1:
    case TermKind::Ode2:
    case TermKind::Ode2Star:
    case TermKind::Ode3:
    case TermKind::Ode4:
    case TermKind::Ode1Star:
      return true;
    default:
      return false;
  }
}

TermPtr t_const0(unsigned arity) { return mk({TermKind::Const0, arity, {}}); }
TermPtr t_const1(unsigned arity) { return mk({TermKind::Const1, arity, {}}); }

TermPtr t_len(TermPtr t) { return mk({TermKind::Length, t->arity, {std::move(t)}}); }
TermPtr t_sg(TermPtr t) { return mk({TermKind::Sign, t->arity, {std::move(t)}}); }
TermPtr t_div2(TermPtr t) { return mk({TermKind::Div2, t->arity, {std::move(t)}}); }

TermPtr t_add(TermPtr l, TermPtr r) {
  unsigned a = same_arity("Add", l, r);
  return mk({TermKind::Add, a, {std::move(l), std::move(r)}});
}
TermPtr t_sub(TermPtr l, TermPtr r) {
  unsigned a = same_arity("Sub", l, r);
  return mk({TermKind::Sub, a, {std::move(l), std::move(r)}});
}
TermPtr t_times(TermPtr l, TermPtr r) {
  unsigned a = same_arity("Times", l, r);
  return mk({TermKind::Times, a, {std::move(l), std::move(r)}});
}

TermPtr t_proj(unsigned index, unsigned arity) {
  if (index < 1 || index > arity)
    throw TermError("InconsistentArity",
                    "Proj index " + std::to_string(index) + " outside 1.." +
                        std::to_string(arity));
  Term t{TermKind::Proj, arity, {}};
  t.proj_index = index;
  return mk(std::move(t));
}

TermPtr t_comp(TermPtr f, std::vector<TermPtr> args) {
  if (args.empty() && f->arity != 0)
    arity_error("Compose", "outer function expects arguments");
  if (!args.empty() && f->arity != args.size())
    arity_error("Compose", "outer arity " + std::to_string(f->arity) +
                               " vs " + std::to_string(args.size()) + " args");
  unsigned a = args.empty() ? 0 : args.front()->arity;
  for (const auto& g : args)
    if (g->arity != a) arity_error("Compose", "inner arities disagree");
  Term t{TermKind::Compose, a, {}};
  t.kids.reserve(args.size() + 1);
  t.kids.push_back(std::move(f));
  for (auto& g : args) t.kids.push_back(std::move(g));
  return mk(std::move(t));
}

TermPtr t_ode1(TermPtr g, TermPtr h) {
  if (h->arity != g->arity + 1)
    arity_error("Ode1", "arity(h) must be arity(g)+1");
  unsigned a = h->arity;
  return mk({TermKind::Ode1, a, {std::move(g), std::move(h)}});
}

static TermPtr ode2_like(TermKind kind, TermPtr g, TermPtr h, TermPtr k) {
  const char* name = kind == TermKind::Ode2 ? "Ode2" : "Ode2Star";
  if (h->arity != g->arity + 1) arity_error(name, "arity(h) must be arity(g)+1");
  if (k->arity != g->arity) arity_error(name, "arity(k) must equal arity(g)");
  unsigned a = h->arity;
  return mk({kind, a, {std::move(g), std::move(h), std::move(k)}});
}

TermPtr t_ode2(TermPtr g, TermPtr h, TermPtr k) {
  return ode2_like(TermKind::Ode2, std::move(g), std::move(h), std::move(k));
}
TermPtr t_ode2_star(TermPtr g, TermPtr h, TermPtr k) {
  return ode2_like(TermKind::Ode2Star, std::move(g), std::move(h), std::move(k));
}

TermPtr t_ode3(TermPtr g) {
  unsigned a = g->arity + 1;
  return mk({TermKind::Ode3, a, {std::move(g)}});
}

TermPtr t_ode4(TermPtr g, TermPtr k, Ode4Dir dir) {
  if (k->arity != g->arity) arity_error("Ode4", "arity(k) must equal arity(g)");
  Term t{TermKind::Ode4, g->arity + 1, {std::move(g), std::move(k)}};
  t.dir = dir;
  return mk(std::move(t));
}

TermPtr t_ode1_star(TermPtr g, TermPtr h, TermPtr k) {
  if (h->arity != g->arity + 1)
    arity_error("Ode1Star", "arity(h) must be arity(g)+1");
  if (k->arity != h->arity)
    arity_error("Ode1Star", "arity(k) must be arity(g)+1");
  unsigned a = h->arity;
  return mk({TermKind::Ode1Star, a, {std::move(g), std::move(h), std::move(k)}});
}

TermPtr t_oracle(std::string name, unsigned arity, bool boolean_valued) {
  Term t{TermKind::Oracle, arity, {}};
  t.oracle_name = std::move(name);
  t.oracle_boolean = boolean_valued;
  return mk(std::move(t));
}

bool statically_boolean(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const0:
    case TermKind::Const1:
    case TermKind::Sign:
      return true;
    case TermKind::Oracle:
      return t->oracle_boolean;
    case TermKind::Sub:
      // cosign pattern 1 - sg(.)
      return t->kids[0]->kind == TermKind::Const1 &&
             t->kids[1]->kind == TermKind::Sign;
    case TermKind::Compose:
      return statically_boolean(t->kids[0]);
    default:
      return false;
  }
}

TermPtr substitute_oracles(
    const TermPtr& t,
    const std::vector<std::pair<std::string, TermPtr>>& subst) {
  if (t->kind == TermKind::Oracle) {
    for (const auto& [name, rep] : subst) {
      if (name == t->oracle_name) {
        if (rep->arity != t->arity)
          arity_error("substitute_oracles", "replacement arity mismatch for " + name);
        return rep;
      }
    }
    return t;
  }
  bool changed = false;
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  for (const auto& k : t->kids) {
    kids.push_back(substitute_oracles(k, subst));
    changed |= kids.back() != k;
  }
  if (!changed) return t;
  Term copy = *t;
  copy.kids = std::move(kids);
  return std::make_shared<const Term>(std::move(copy));
}

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  auto kidlist = [&](size_t from) {
    std::string out;
    for (size_t i = from; i < t->kids.size(); ++i)
      out += " " + to_string(t->kids[i]);
    return out;
  };
  switch (t->kind) {
    case TermKind::Const0: os << "0"; break;
    case TermKind::Const1: os << "1"; break;
    case TermKind::Length: os << "(len" << kidlist(0) << ")"; break;
    case TermKind::Sign: os << "(sg" << kidlist(0) << ")"; break;
    case TermKind::Add: os << "(+" << kidlist(0) << ")"; break;
    case TermKind::Sub: os << "(-" << kidlist(0) << ")"; break;
    case TermKind::Div2: os << "(div2" << kidlist(0) << ")"; break;
    case TermKind::Times: os << "(*" << kidlist(0) << ")"; break;
    case TermKind::Proj:
      os << "(proj " << t->proj_index << " " << t->arity << ")";
      break;
    case TermKind::Compose:
      os << "(comp " << to_string(t->kids[0]) << kidlist(1) << ")";
      break;
    case TermKind::Ode1: os << "(ode1" << kidlist(0) << ")"; break;
    case TermKind::Ode2: os << "(ode2" << kidlist(0) << ")"; break;
    case TermKind::Ode2Star: os << "(ode2*" << kidlist(0) << ")"; break;
    case TermKind::Ode3: os << "(ode3" << kidlist(0) << ")"; break;
    case TermKind::Ode4:
      os << "(ode4" << kidlist(0) << " "
         << (t->dir == Ode4Dir::Plus ? "+" : t->dir == Ode4Dir::Minus ? "-" : "0")
         << ")";
      break;
    case TermKind::Ode1Star: os << "(ode1*" << kidlist(0) << ")"; break;
    case TermKind::Oracle:
      os << "(oracle " << t->oracle_name << " " << t->arity << ")";
      break;
  }
  return os.str();
}

}  // namespace odecirc
