#ifndef G2ZETA_POLYLOG_HPP
#define G2ZETA_POLYLOG_HPP

#include "hurwitz.hpp"
#include "model.hpp"

#include <map>
#include <tuple>

namespace g2zeta {

inline EvalResult pi_times(int power, const PrecisionContext& ctx) {
    if (power < 1) throw std::invalid_argument("pi_times: need power >= 1");
    ctx.activate();
    Real v = pow(pi_value(), power);
    return {Complex(v), fabs(v) * pow(Real(10), -(ctx.work_digits() - 3))};
}

/// Li_s(mu12^j): closed log form at s = 1, root-of-unity filtered Hurwitz
/// zetas at s >= 2.
inline EvalResult li_depth1(int s, int j, const PrecisionContext& ctx) {
    j %= 12;
    if (j < 0) j += 12;
    if (s < 1 || (s == 1 && j == 0))
        throw std::invalid_argument("li_depth1: divergent arguments");
    static std::map<std::tuple<int, int, int>, EvalResult> cache;
    auto key = std::make_tuple(s, j, ctx.digits);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    ctx.activate();
    Real slack = pow(Real(10), -(ctx.work_digits() - 3));
    EvalResult r;
    if (s == 1) {
        auto roots = unit_roots_12();
        Complex one_minus{1 - roots[j].re, -roots[j].im};
        r = {-clog(one_minus), slack};
    } else if (j == 0) {
        r = hurwitz_zeta(s, Rational(1), ctx);
    } else {
        int N = 12 / std::gcd(j, 12);
        auto roots = unit_roots_12();
        Complex acc;
        Real err = 0;
        for (int k = 1; k <= N; ++k) {
            EvalResult h = hurwitz_zeta(s, Rational(k, N), ctx);
            acc += roots[(j * k) % 12] * h.value;
            err += h.error_bound;
        }
        Real scale = pow(Real(N), -s);
        r = {scale * acc, scale * err + slack};
    }
    cache.emplace(key, r);
    return r;
}

namespace detail {

/// Coefficients w_q of the asymptotic expansion
///   sum_{k >= a} x^k k^(-s) = x^a * sum_q w_q a^(-q),   q = sigma..qmax,
/// where sigma = s for x != 1 (iterated Abel summation) and sigma = s-1 for
/// x = 1 (Euler-Maclaurin).  Returned as a dense vector indexed by q.
inline std::vector<Complex> tail_expansion(int s, int j, int qmax,
                                           const std::array<Complex, 12>& roots) {
    std::vector<Complex> w(qmax + 1);
    if (j != 0) {
        // sum_{k>=a} x^k k^-s = x^a [ a^-s/(1-x)
        //     - x/(1-x) sum_{r>=1} (-1)^{r+1} binom(s+r-1,r) (tail at s+r) ]
        Complex x = roots[j];
        Complex inv1x = Complex(Real(1)) / Complex(Real(1) - x.re, -x.im);
        Complex mx = Complex(Real(0)) - x * inv1x;
        std::map<int, std::vector<Complex>> U;
        for (int t = qmax; t >= s; --t) {
            std::vector<Complex> wt(qmax + 1);
            wt[t] += inv1x;
            for (int r = 1; t + r <= qmax; ++r) {
                Complex c = ((r % 2) ? mx : Complex(Real(0)) - mx) *
                            Complex(to_real(Rational(binomial(t + r - 1, r))));
                const auto& sub = U[t + r];
                for (int q = t + r; q <= qmax; ++q) wt[q] += c * sub[q];
            }
            U[t] = std::move(wt);
        }
        w = U[s];
    } else {
        // zeta(s, a) = a^{1-s}/(s-1) + a^-s/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} a^{-s-2j+1}
        w[s - 1] = Complex(Real(1) / (s - 1));
        if (s <= qmax) w[s] = Complex(Real(1) / 2);
        for (int jj = 1; s + 2 * jj - 1 <= qmax; ++jj) {
            Rational c = bernoulli_number(2 * jj);
            for (int t = 0; t < 2 * jj - 1; ++t) c *= s + t;
            for (int t = 2; t <= 2 * jj; ++t) c /= t;
            w[s + 2 * jj - 1] = Complex(to_real(c));
        }
    }
    return w;
}

} // namespace detail

/// Li_{s1,s2}(mu12^j1, mu12^j2): exact head summation over the inner index
/// up to M, plus an asymptotic tail reduced to depth-1 tails at mu12^(j1+j2).
inline EvalResult li_depth2(int s1, int s2, int j1, int j2, const PrecisionContext& ctx) {
    j1 %= 12; if (j1 < 0) j1 += 12;
    j2 %= 12; if (j2 < 0) j2 += 12;
    if (s1 < 1 || s2 < 1) throw std::invalid_argument("li_depth2: exponents must be positive");
    if (s1 == 1 && j1 == 0) throw std::invalid_argument("li_depth2: divergent leading pair");
    static std::map<std::tuple<int, int, int, int, int>, EvalResult> cache;
    auto key = std::make_tuple(s1, s2, j1, j2, ctx.digits);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    ctx.activate();
    auto roots = unit_roots_12();
    int jz = (j1 + j2) % 12;
    EvalResult outer = li_depth1(s1, j1, ctx);
    Real eps = ctx.target() / 4;
    Real round_unit = pow(Real(10), -(ctx.work_digits() - 2));

    int M = 240;
    int I = static_cast<int>((ctx.digits + 12) * 2.302585 / std::log(M + 1.0)) + 10;
    int sigma = (j1 == 0) ? s1 - 1 : s1;

    EvalResult result;
    for (int attempt = 0;; ++attempt) {
        // head: n = 1..M of y^n n^-s2 R(x, n), R via outer value minus
        // running partial sums (exact at working precision)
        Complex partial, head, boundary;
        for (int n = 1; n <= M; ++n) {
            partial += roots[(j1 * n) % 12] / Real(pow(Real(n), s1));
            boundary = outer.value - partial;
            head += (roots[(j2 * n) % 12] / Real(pow(Real(n), s2))) * boundary;
        }

        int qmax = sigma + I - 1;
        std::vector<Complex> w = detail::tail_expansion(s1, j1, qmax, roots);

        // empirical remainder of the expansion at the head/tail boundary
        Real a = Real(M + 1);
        Complex pred;
        for (int q = sigma; q <= qmax; ++q)
            if (!w[q].is_zero()) pred += Real(pow(a, -q)) * w[q];
        pred = roots[(j1 * (M + 1)) % 12] * pred;
        Real diff = (pred - boundary).abs();

        // fold in n^-s2 = (k-1)^-s2 expanded around k = n+1; collect per
        // absolute power Q of k, capped at total order qmax + s2
        int Qmax = qmax + s2;
        std::map<int, Complex> cq;
        Real drop_bound = 0;
        for (int q = sigma; q <= qmax; ++q) {
            if (w[q].is_zero()) continue;
            int jj = 0;
            for (; q + s2 + jj <= Qmax; ++jj)
                cq[q + s2 + jj] += w[q] * Complex(to_real(Rational(binomial(s2 + jj - 1, jj))));
            drop_bound += 2 * w[q].abs() * to_real(Rational(binomial(s2 + jj - 1, jj))) *
                          pow(Real(M + 2), -(q + s2 + jj));
        }

        Complex tail;
        Real tail_err = 0;
        for (auto& [Q, c] : cq) {
            EvalResult inner = li_depth1(Q, jz, ctx);
            Complex t1 = inner.value;
            Complex p;
            for (int k = 1; k <= M + 1; ++k)
                p += roots[(jz * k) % 12] / Real(pow(Real(k), Q));
            t1 -= p;
            tail += c * t1;
            tail_err += c.abs() * (inner.error_bound + Real(M) * round_unit);
        }
        tail = (roots[j1] / roots[jz]) * tail;

        Real bound = outer.error_bound * (1 + log(Real(M)))   // head uses Li(x)
                     + 2 * diff * (M + 1)                     // expansion remainder
                     + drop_bound + tail_err
                     + Real(4 * M) * round_unit;              // accumulation slack
        result = {head + tail, bound};
        if (bound <= eps || attempt >= 3) break;
        if (I < 90) I += 20;
        else if (M < 2000) { M *= 2; }
    }

    cache.emplace(key, result);
    return result;
}

inline EvalResult evaluate_term(const MPVTerm& t, const PrecisionContext& ctx) {
    if (t.depth() == 1) return li_depth1(t.exponents()[0], t.args()[0], ctx);
    return li_depth2(t.exponents()[0], t.exponents()[1], t.args()[0], t.args()[1], ctx);
}

/// Numerical value of a formal sum, coefficients embedded exactly and all
/// per-term bounds accumulated.
inline EvalResult evaluate(const FormalSum& fs, const PrecisionContext& ctx) {
    ctx.activate();
    Complex acc;
    Real err = 0;
    Real slack = pow(Real(10), -(ctx.work_digits() - 3));
    for (auto& [term, coeff] : fs.terms()) {
        EvalResult tv = evaluate_term(term, ctx);
        Complex c = cyc_embed(coeff);
        acc += c * tv.value;
        err += c.abs() * tv.error_bound + tv.value.abs() * slack + slack;
    }
    return {acc, err};
}

} // namespace g2zeta

#endif
