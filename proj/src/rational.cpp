#include "loglevy/rational.hpp"

#include <cfloat>
#include <limits>

namespace loglevy {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 mantissa bits make mant * 2^53 integral
    auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(scaled);
    if (exp >= 0) {
        r *= rational_pow(Rational(2), exp);
    } else {
        r /= rational_pow(Rational(2), -exp);
    }
    return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

long double to_long_double(const Rational& r) { return r.convert_to<long double>(); }

Rational rational_pow(const Rational& r, long k) {
    if (k == 0) return Rational(1);
    if (k < 0) {
        if (r == 0) throw std::domain_error("rational_pow: 0 to negative power");
        return Rational(1) / rational_pow(r, -k);
    }
    Rational base = r, acc(1);
    long e = k;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

std::string to_string(const Rational& r) {
    return r.str();
}

}  // namespace loglevy
