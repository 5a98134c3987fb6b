#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace odecirc {

// Arbitrary-precision signed integer; terms take images in Z.
using Value = boost::multiprecision::cpp_int;

// Binary length of |v|: len(0)=0, len(1)=1, len(x)=ceil(log2(x+1)) for x>=0.
unsigned len(const Value& v);

// sign function: 1 for v>0, 0 otherwise; cosg(v) = 1 - sg(v).
inline int sg(const Value& v) { return v > 0 ? 1 : 0; }
inline int cosg(const Value& v) { return v > 0 ? 0 : 1; }

// Integer division by 2 flooring toward -inf (so fdiv2(-3) = -2).
Value fdiv2(const Value& v);

// floor(v / 2^e), flooring toward -inf.
Value fdiv_pow2(const Value& v, unsigned e);

inline Value pow2(unsigned e) { return Value(1) << e; }

// alpha(u) = 2^u - 1, the greatest integer of length u.
inline Value alpha(unsigned u) { return (Value(1) << u) - 1; }

// Bit b of |v| (LSB = bit 0).
int bit_of(const Value& v, unsigned b);

}  // namespace odecirc
