#ifndef G2ZETA_ORACLE_HPP
#define G2ZETA_ORACLE_HPP

#include "model.hpp"
#include "precision.hpp"

#include <cmath>
#include <vector>

namespace g2zeta {

struct OracleResult {
    long cutoff = 0;
    Real partial{0};
    Real extrapolated{0};
    Real error_estimate{0};
};

namespace detail {

template <typename F>
F lattice_term(const InputTuple& t, long m, long n) {
    F term(1);
    for (int i = 0; i < 6; ++i) {
        if (!t.s[i]) continue;
        F f(kCanonicalForms[i].at(m, n));
        for (int e = 0; e < t.s[i]; ++e) term /= f;
    }
    return term;
}

/// Truncated double sum over the box [1,M]^2, accumulated along
/// anti-diagonals m+n = const (all terms positive; this is conditioning).
template <typename F>
F partial_sum_impl(const InputTuple& t, long M) {
    F total(0);
    for (long d = 2 * M; d >= 2; --d) {
        F row(0);
        long lo = std::max<long>(1, d - M), hi = std::min<long>(M, d - 1);
        for (long m = lo; m <= hi; ++m) row += lattice_term<F>(t, m, d - m);
        total += row;
    }
    return total;
}

/// Box sums at several ascending cutoffs, computed incrementally by adding
/// the L-shaped shell between successive cutoffs (one pass over the
/// largest box in total).
template <typename F>
std::vector<F> partial_sums_at(const InputTuple& t, const std::vector<long>& cuts) {
    std::vector<F> out;
    F total(0);
    long prev = 0;
    for (long C : cuts) {
        for (long m = C; m > prev; --m) {
            F row(0);
            for (long n = C; n >= 1; --n) row += lattice_term<F>(t, m, n);
            total += row;
        }
        for (long n = C; n > prev; --n) {
            F col(0);
            for (long m = prev; m >= 1; --m) col += lattice_term<F>(t, m, n);
            total += col;
        }
        out.push_back(total);
        prev = C;
    }
    return out;
}

/// Solve a small linear system by Gaussian elimination at oracle precision.
inline std::vector<Real> solve_dense(std::vector<std::vector<Real>> A, std::vector<Real> b) {
    int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (fabs(A[r][col]) > fabs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            Real f = A[r][col] / A[col][col];
            for (int cc = col; cc < n; ++cc) A[r][cc] -= f * A[col][cc];
            b[r] -= f * b[col];
        }
    }
    std::vector<Real> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

/// Fit S_M against a cutoff-tail basis and return the constant term.
/// with_logs selects {1, 1/M, logM/M, 1/M^2, logM/M^2, ...}; otherwise pure
/// powers {1, 1/M, 1/M^2, ...}.
inline Real fit_limit(const std::vector<long>& cuts, const std::vector<Real>& sums,
                      bool with_logs) {
    int n = static_cast<int>(cuts.size());
    std::vector<std::vector<Real>> A(n);
    for (int i = 0; i < n; ++i) {
        Real m(cuts[i]), lg = log(Real(cuts[i]));
        std::vector<Real> row{Real(1)};
        Real p(1);
        while (static_cast<int>(row.size()) < n) {
            p /= m;
            row.push_back(p);
            if (with_logs && static_cast<int>(row.size()) < n) row.push_back(lg * p);
        }
        A[i] = std::move(row);
    }
    return solve_dense(std::move(A), sums)[0];
}

} // namespace detail

/// Exact truncated double sum of the defining series.  Divergent tuples are
/// allowed (used by classification checks); the result is just the finite sum.
inline Real oracle_partial_sum(const InputTuple& t, long M, const PrecisionContext& ctx) {
    if (M < 1) throw std::invalid_argument("oracle_partial_sum: need M >= 1");
    int digits = std::min(ctx.digits, 30);
    if (digits <= 15) return Real(detail::partial_sum_impl<double>(t, M));
    Real::default_precision(digits + 10);
    return detail::partial_sum_impl<Real>(t, M);
}

/// Partial sums at cutoffs M(1 + l/4) extrapolated against a 1/M power
/// basis augmented with log(M)/M^p terms (the lattice tails carry genuine
/// log terms whenever an inner sum is harmonic-like).  `levels` controls the
/// basis size; levels = 0 returns the plain partial sum.
inline OracleResult extrapolate(const InputTuple& t, long M, int levels,
                                const PrecisionContext& ctx) {
    if (!classify(t).convergent)
        throw std::invalid_argument("extrapolate: divergent input " + t.str());
    OracleResult res;
    res.cutoff = M;
    Real::default_precision(45);
    if (levels <= 0) {
        res.partial = oracle_partial_sum(t, M, ctx);
        res.extrapolated = res.partial;
        return res;
    }
    int npts = 2 * levels + 2;
    std::vector<long> cuts;
    for (int l = 0; l < npts; ++l)
        cuts.push_back(M + l * (M / 4 > 0 ? M / 4 : 1));
    std::vector<Real> sums;
    if (std::min(ctx.digits, 30) <= 15) {
        for (double s : detail::partial_sums_at<double>(t, cuts))
            sums.push_back(Real(s));
    } else {
        sums = detail::partial_sums_at<Real>(t, cuts);
    }
    res.partial = sums[0];
    Real full = detail::fit_limit(cuts, sums, true);
    std::vector<long> c2(cuts.begin(), cuts.end() - 1);
    std::vector<Real> s2(sums.begin(), sums.end() - 1);
    Real reduced = detail::fit_limit(c2, s2, true);
    Real pure = detail::fit_limit(cuts, sums, false);
    res.extrapolated = full;
    res.error_estimate = 10 * fabs(full - reduced) + fabs(full - pure) +
                         fabs(sums[npts - 1] - sums[npts - 2]) / 1000;
    return res;
}

} // namespace g2zeta

#endif
