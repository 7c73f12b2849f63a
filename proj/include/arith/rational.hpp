#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace arith {

using Int = mpz_class;
using Rat = mpq_class;

// Accepts "p/q", plain integers, decimal literals ("0.24"), and the token
// "phi" (golden ratio snapped to a continued-fraction convergent, see
// phi_snapped). Throws ConfigError on anything else.
Rat parse_rational(const std::string& s);

// Largest Fibonacci-ratio convergent F_{k+1}/F_k of the golden ratio whose
// denominator fits in `den_bits` bits. The snap error is below 1/q^2.
Rat phi_snapped(unsigned den_bits = 128);

double to_double(const Rat& q);

// 2^e as an exact rational, e may be negative.
Rat pow2(long e);

// q^e for e >= 0.
Rat rat_pow(const Rat& q, unsigned long e);

std::string rat_str(const Rat& q);

// Exact dot product of a rational vector with an integer vector.
Rat dot(const std::vector<Rat>& a, const std::vector<Int>& i);

// Squared euclidean norm of an integer vector.
Int norm2(const std::vector<Int>& i);

} // namespace arith
