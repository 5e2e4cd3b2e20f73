#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace loopforms {

// All arithmetic in this project is exact: arbitrary-precision integers for
// matrix entries and determinants, rationals for the symmetric elimination
// used by signature computations. Floating point is never used.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Int& x) { return x.sign(); }

// Remainder in {0, 1} for modulus 2, independent of the sign of x.
inline int parity_bit(const Int& x) { return static_cast<int>(((x % 2) + 2) % 2); }

bool is_prime(long p);

}  // namespace loopforms
