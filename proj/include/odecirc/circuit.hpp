#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "odecirc/diagnostics.hpp"
#include "odecirc/value.hpp"

namespace odecirc {

enum class GateKind { InputPos, InputNeg, And, Or, Maj };
enum class Variant { AC, TC };

struct Gate {
  uint64_t id;
  unsigned level;
  GateKind kind;
  std::vector<uint64_t> preds;
};

// Layered normal-form circuit. Level 0 holds the inputs (ids 0..n-1) and
// negated inputs (ids n..2n-1); edges connect consecutive levels only; gate
// ids live in {0 .. n^k - 1} and the m outputs occupy the top ids
// n^k-m .. n^k-1 (waived for depth-0 circuits). AC circuits alternate
// Or (odd) / And (even >= 2) with even depth; TC circuits place Or at 3e+1,
// And at 3e+2 and Maj at 3e.
struct Circuit {
  unsigned n_inputs = 0;
  unsigned k = 2;        // size exponent
  unsigned depth = 0;
  std::vector<Gate> gates;        // sorted by id
  std::vector<uint64_t> outputs;  // ascending, contiguous

  Variant variant = Variant::AC;

  uint64_t id_space() const;  // n^k
  const Gate* find(uint64_t id) const;
};

// Bit vector, least-significant bit first.
struct BitVector {
  std::vector<bool> bits;

  unsigned width() const { return static_cast<unsigned>(bits.size()); }
  static BitVector from_value(const Value& v, unsigned width);
  Value to_value() const;  // unsigned interpretation
  std::string to_string() const;                      // LSB first
  static std::optional<BitVector> parse(const std::string& s);
};

struct CircuitError : std::runtime_error {
  std::string code;
  CircuitError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

std::vector<Diagnostic> validate_normal_form(const Circuit& c);

// Level-by-level evaluation; Maj is strict (twice the number of true
// predecessors must exceed the fan-in). Throws WidthMismatch/InvalidCircuit.
BitVector simulate(const Circuit& c, const BitVector& input);

// Validates once and resolves gate ids to dense ranks, for repeated runs.
class Simulator {
 public:
  explicit Simulator(const Circuit& c);
  BitVector run(const BitVector& input) const;

 private:
  unsigned n_inputs_;
  struct Row {
    GateKind kind;
    uint32_t input_index = 0;
    std::vector<uint32_t> pred_ranks;
  };
  std::vector<Row> rows_;             // in evaluation order
  std::vector<uint32_t> output_rows_;
};

struct CircuitStats {
  uint64_t size;   // all gates, inputs included
  unsigned depth;
};
CircuitStats stats(const Circuit& c);

// Interchange format (one record per line, decimal ids).
std::string encode(const Circuit& c);
Circuit decode(const std::string& text);  // throws CircuitError("ParseError",...)
std::string to_dot(const Circuit& c);

bool structurally_equal(const Circuit& a, const Circuit& b);

// Random normal-form circuit for the verification harnesses.
struct RandomCircuitSpec {
  unsigned n = 4;
  unsigned depth = 2;         // conforming to the variant's level pattern
  unsigned max_level_width = 6;
  unsigned max_fanin = 3;
  Variant variant = Variant::AC;
};
Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitSpec& spec);

}  // namespace odecirc
