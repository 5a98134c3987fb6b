#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "odecirc/term.hpp"

namespace odecirc {

struct ParseError : std::runtime_error {
  std::string code;  // ParseError or UnknownStdName
  size_t offset;     // byte position in the input
  ParseError(std::string c, size_t off, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)), offset(off) {}
};

// S-expression surface syntax:
//   atom ::= 0 | 1 | x<i>
//   expr ::= atom | (len e) | (sg e) | (+ e e) | (- e e) | (div2 e) | (* e e)
//          | (proj i p) | (comp f e...) | (ode1 g h) | (ode2 g h k)
//          | (ode2* g h k) | (ode3 g) | (ode4 g k +|-|0) | (ode1* g h k)
//          | (oracle name arity) | (std name)
// Comments run from ';' to end of line. x<i> resolves to a projection in the
// enclosing arity context; the top-level arity is the smallest consistent one
// unless a larger hint is given.
TermPtr parse_dsl(const std::string& text,
                  std::optional<unsigned> arity_hint = std::nullopt);

}  // namespace odecirc
