#pragma once

#include <memory>
#include <string>
#include <vector>

#include "odecirc/circuit.hpp"
#include "odecirc/eval.hpp"
#include "odecirc/stdterms.hpp"

namespace odecirc {

// The circ_C description of a circuit family: connection relation, level
// predicates, input-bit predicates and output count, exposed as host oracle
// functions keyed "C", "L0in", "L0neg", "L1".."Ld", "m".
struct CircuitFamilyAdapter {
  Variant variant = Variant::AC;
  unsigned k = 2;  // index space is l(x)^k
  unsigned d = 2;  // depth (number of level predicates)
  OracleBindings oracles;

  // set when the adapter wraps one concrete circuit
  unsigned fixed_m = 0;
  unsigned fixed_n = 0;
};

struct NonuniformError : std::runtime_error {
  std::string code;  // IndexSpaceTooSmall, VariantMismatch
  NonuniformError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

// Encode the circ_C predicates of one validated circuit. The family is
// re-indexed over n+1 virtual inputs whose extra input is a constant leading
// 1, so that l(x) identifies the circuit for every one of the 2^n inputs
// (encode_input supplies the pad bit).
CircuitFamilyAdapter adapter_from_circuit(const Circuit& c);

Value encode_input(const BitVector& input);

// The Eval hierarchy and the output accumulator built over basics + circ_C.
struct EvalTermSet {
  CheckedTerm accumulator;          // F(y,x); evaluate at y = 2^m
  CheckedTerm entry;                // arity 1: F(2^{m(x)}, x)
  std::vector<TermPtr> levels;      // Eval_0 .. Eval_d (each arity 2: t, x)
  unsigned k = 2;
  unsigned d = 2;
};

EvalTermSet build_eval_term(const CircuitFamilyAdapter& a);     // AC variant
EvalTermSet build_eval_term_tc(const CircuitFamilyAdapter& a);  // TC variant

// Output bits of the accumulator value: gate n^k-m+j carries binary weight
// 2^{m-1-j} (most significant output first).
BitVector output_bits_of(const Value& v, unsigned m);

struct RoundtripRow {
  BitVector input, expected, got;
};

struct RoundtripReport {
  std::vector<RoundtripRow> rows;
  unsigned mismatches = 0;
  std::string to_text() const;
};

// Term evaluation against direct simulation on the given inputs.
RoundtripReport roundtrip_check(const Circuit& c,
                                const std::vector<BitVector>& inputs);
// every input of width n
RoundtripReport roundtrip_exhaustive(const Circuit& c);

// Same report against an externally supplied (possibly corrupted) adapter.
RoundtripReport roundtrip_check_with(const Circuit& c,
                                     const CircuitFamilyAdapter& adapter,
                                     const std::vector<BitVector>& inputs);

}  // namespace odecirc
