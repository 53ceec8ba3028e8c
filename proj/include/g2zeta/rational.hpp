#ifndef G2ZETA_RATIONAL_HPP
#define G2ZETA_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace g2zeta {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Binomial coefficient; 0 outside the Pascal triangle.  binomial(-1, 0)
/// is defined as 1 so that empty-product edge cases of the splitting
/// formulas fall out of the general loops.
inline Int binomial(long n, long k) {
    if (n < 0) return (n == -1 && k == 0) ? Int(1) : Int(0);
    if (k < 0 || k > n) return Int(0);
    Int r = 1;
    if (k > n - k) k = n - k;
    for (long i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline Int int_pow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// c^(-e) as an exact rational, c > 0.
inline Rational inv_pow(long c, unsigned e) {
    return Rational(Int(1), int_pow(Int(c), e));
}

inline std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(const std::string& s) {
    auto pos = s.find('/');
    if (pos == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, pos)), Int(s.substr(pos + 1)));
}

} // namespace g2zeta

#endif
