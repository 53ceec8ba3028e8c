#ifndef G2ZETA_PRECISION_HPP
#define G2ZETA_PRECISION_HPP

#include "cyclo.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace g2zeta {

using Real = boost::multiprecision::mpfr_float;

/// Working precision for the evaluator.  Truncation bounds are tracked
/// explicitly; rounding is absorbed by the guard digits.
struct PrecisionContext {
    int digits = 40;

    PrecisionContext() = default;
    explicit PrecisionContext(int d) : digits(d) {
        if (d < 15) throw std::invalid_argument("PrecisionContext: digits must be >= 15");
    }

    int work_digits() const { return digits + 15; }

    /// Target absolute error, five guard digits below the requested count.
    Real target() const { return pow(Real(10), 5 - digits); }

    /// Install the working precision for mpfr temporaries.
    void activate() const { Real::default_precision(work_digits()); }
};

/// Minimal complex type over Real (std::complex is not specified for
/// user-defined floating types).
struct Complex {
    Real re{0}, im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    Complex operator-() const { return {-re, -im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& a, const Complex& b) {
        return {a * b.re, a * b.im};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend Complex operator/(const Complex& a, const Real& d) {
        return {a.re / d, a.im / d};
    }
    Complex& operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }
    Complex& operator-=(const Complex& b) { re -= b.re; im -= b.im; return *this; }

    Complex conj() const { return {re, -im}; }
    Real abs() const { return sqrt(re * re + im * im); }
    bool is_zero() const { return re == 0 && im == 0; }
};

inline Complex clog(const Complex& z) {
    return {log(z.re * z.re + z.im * z.im) / 2, atan2(z.im, z.re)};
}

inline Real pi_value() { return 4 * atan(Real(1)); }

/// The 12 twelfth roots of unity at working precision.
inline std::array<Complex, 12> unit_roots_12() {
    std::array<Complex, 12> r;
    Real pi = pi_value();
    for (int j = 0; j < 12; ++j) {
        Real th = pi * j / 6;
        r[j] = {cos(th), sin(th)};
    }
    return r;
}

/// value with a trusted absolute error bound: |value - truth| <= error_bound.
struct EvalResult {
    Complex value;
    Real error_bound{0};
};

inline Real to_real(const Rational& q) {
    return Real(numerator(q)) / Real(denominator(q));
}

/// Numerical embedding of a cyclotomic rational with mu = exp(i*pi/6).
inline Complex cyc_embed(const CycloRational& c) {
    Real h3 = sqrt(Real(3)) / 2;
    // mu = (h3, 1/2), mu^2 = (1/2, h3), mu^3 = (0, 1)
    Real c0 = to_real(c.coord(0)), c1 = to_real(c.coord(1));
    Real c2 = to_real(c.coord(2)), c3 = to_real(c.coord(3));
    return {c0 + c1 * h3 + c2 / 2, c1 / 2 + c2 * h3 + c3};
}

} // namespace g2zeta

#endif
