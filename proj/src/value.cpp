#include "odecirc/value.hpp"

namespace odecirc {

unsigned len(const Value& v) {
  if (v == 0) return 0;
  Value a = v < 0 ? Value(-v) : v;
  return static_cast<unsigned>(boost::multiprecision::msb(a)) + 1u;
}

Value fdiv2(const Value& v) {
  if (v >= 0) return v >> 1;
  Value q = v / 2;
  if (v % 2 != 0) q -= 1;
  return q;
}

Value fdiv_pow2(const Value& v, unsigned e) {
  if (e == 0) return v;
  if (v >= 0) return v >> e;
  Value d = Value(1) << e;
  Value q = v / d;
  if (v % d != 0) q -= 1;
  return q;
}

int bit_of(const Value& v, unsigned b) {
  Value a = v < 0 ? Value(-v) : v;
  return boost::multiprecision::bit_test(a, b) ? 1 : 0;
}

}  // namespace odecirc
