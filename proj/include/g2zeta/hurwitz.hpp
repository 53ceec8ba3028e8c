#ifndef G2ZETA_HURWITZ_HPP
#define G2ZETA_HURWITZ_HPP

#include "precision.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace g2zeta {

/// Exact Bernoulli numbers B_0, B_1, ... (B_1 = -1/2), cached.
inline const Rational& bernoulli_number(int m) {
    static std::vector<Rational> cache{Rational(1)};
    while (static_cast<int>(cache.size()) <= m) {
        int n = static_cast<int>(cache.size());
        // sum_{k=0}^{n} binom(n+1,k) B_k = 0
        Rational s(0);
        for (int k = 0; k < n; ++k) s += Rational(binomial(n + 1, k)) * cache[k];
        cache.push_back(-s / Rational(binomial(n + 1, n)));
    }
    return cache[m];
}

namespace detail {

/// Euler-Maclaurin tail: zeta(s, a) for real a >= 1, integer s >= 2, with
/// |returned - truth| <= bound.  `a` must already be large enough that the
/// asymptotic series converges to the requested tolerance.
inline std::pair<Real, Real> em_zeta_tail(int s, const Real& a, const Real& eps) {
    Real inv = 1 / a;
    Real r = pow(inv, s);            // a^-s
    Real value = a * r / (s - 1) + r / 2;
    Real power = r * inv;            // a^{-s-1}
    Real poch = Real(s) / 2;         // (s)_{2j-1} / (2j)!, updated per step
    Real prev_abs = -1, bound = 0;
    for (int j = 1; j <= 400; ++j) {
        Real term = to_real(bernoulli_number(2 * j)) * poch * power;
        Real t = fabs(term);
        if (prev_abs >= 0 && t > prev_abs) { bound = 4 * t; break; }
        value += term;
        bound = 4 * t;
        if (t < eps) break;
        prev_abs = t;
        poch *= Real(s + 2 * j - 1) * Real(s + 2 * j);
        poch /= Real(2 * j + 1) * Real(2 * j + 2);
        power *= inv * inv;
    }
    return {value, bound};
}

} // namespace detail

/// Hurwitz zeta(s, q) = sum_{k>=0} (k+q)^(-s) for integer s >= 2 and
/// rational q in (0, 1], with an explicit truncation bound.
inline EvalResult hurwitz_zeta(int s, const Rational& q, const PrecisionContext& ctx) {
    if (s < 2) throw std::invalid_argument("hurwitz_zeta: need s >= 2");
    if (q <= 0 || q > 1) throw std::invalid_argument("hurwitz_zeta: need q in (0,1]");
    static std::map<std::tuple<int, Int, Int, int>, EvalResult> cache;
    auto key = std::make_tuple(s, numerator(q), denominator(q), ctx.digits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    ctx.activate();
    Real eps = ctx.target() / 64;
    Real q0 = to_real(q);
    long K = std::max<long>(16, static_cast<long>(0.45 * ctx.work_digits()) + 8);
    Real value, bound;
    for (int attempt = 0;; ++attempt) {
        Real head = 0;
        for (long k = 0; k < K; ++k) head += pow(k + q0, -s);
        auto [tail, b] = detail::em_zeta_tail(s, K + q0, eps);
        value = head + tail;
        bound = b;
        if (bound < eps || attempt >= 3) break;
        K *= 2;
    }
    // rounding slack for ~K head additions at working precision
    bound += Real(K + 8) * pow(Real(10), -(ctx.work_digits() - 2));
    EvalResult r{Complex(value), bound};
    cache.emplace(key, r);
    return r;
}

} // namespace g2zeta

#endif
