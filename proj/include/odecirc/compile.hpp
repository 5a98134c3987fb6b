#pragma once

#include <map>
#include <vector>

#include "odecirc/circuit.hpp"
#include "odecirc/validate.hpp"
#include "odecirc/value.hpp"

namespace odecirc {

// Magnitude widths (bits, sign carried separately) for every subterm in every
// argument-width context it is compiled under. Sound: evaluation within the
// argument widths never exceeds a node's planned width.
struct WidthPlan {
  TermPtr root;
  std::vector<unsigned> arg_widths;
  std::map<std::pair<const Term*, std::vector<unsigned>>, unsigned> widths;

  unsigned output_width() const;
  unsigned lookup(const Term* t, const std::vector<unsigned>& argw) const;
};

struct CompileError : std::runtime_error {
  std::string code;  // UnboundOracle, PlanTooNarrow, ModeError
  CompileError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

WidthPlan infer_widths(const CheckedTerm& t, const std::vector<unsigned>& input_widths);

// True when the term needs majority gates: Times, ODE1*, or ODE2* (whose
// k = 0 branch is binary counting).
bool requires_tc(const TermPtr& t);

// Lower a checked term to a normal-form circuit. The produced depth depends
// only on the term structure, never on the plan widths; simulation agrees
// with eval bit for bit on inputs within the plan.
Circuit compile(const CheckedTerm& t, const WidthPlan& plan);
Circuit compile(const CheckedTerm& t, const WidthPlan& plan, Variant variant);

struct DepthProfileEntry {
  unsigned width;
  unsigned depth;
  uint64_t size;
};
std::vector<DepthProfileEntry> depth_profile(const CheckedTerm& t,
                                             const std::vector<unsigned>& widths);

// Argument packing for simulation: each argument occupies width+1 bits,
// magnitude LSB first, sign on top; extra circuit inputs are padding.
BitVector pack_args(const Circuit& c, const WidthPlan& plan,
                    const std::vector<Value>& args);
Value unpack_output(const WidthPlan& plan, const BitVector& out);
bool args_fit(const WidthPlan& plan, const std::vector<Value>& args);

}  // namespace odecirc
