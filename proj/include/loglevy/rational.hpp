#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace loglevy {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always in lowest terms with positive
// denominator. Carrier for every combinatorial coefficient in the library;
// arithmetic is exact, there is no rounding anywhere in this type.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num, den);
}

// Exact rational value of a finite double (every finite double is a dyadic
// rational). Used to feed measured float inputs into exact identities.
Rational rational_from_double(double x);

double to_double(const Rational& r);
long double to_long_double(const Rational& r);

// r^k for integer k (k < 0 requires r != 0).
Rational rational_pow(const Rational& r, long k);

std::string to_string(const Rational& r);

}  // namespace loglevy
