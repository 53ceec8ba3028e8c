#ifndef G2ZETA_CYCLO_HPP
#define G2ZETA_CYCLO_HPP

#include "rational.hpp"

#include <array>
#include <ostream>

namespace g2zeta {

/// Element of Q(mu) where mu = exp(2*pi*i/12), written on the basis
/// {1, mu, mu^2, mu^3}.  Products are reduced by the minimal polynomial
/// x^4 - x^2 + 1, i.e. mu^4 = mu^2 - 1.
class CycloRational {
public:
    CycloRational() : c_{Rational(0), Rational(0), Rational(0), Rational(0)} {}
    explicit CycloRational(const Rational& r)
        : c_{r, Rational(0), Rational(0), Rational(0)} {}
    CycloRational(Rational a, Rational b, Rational c, Rational d)
        : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    static CycloRational from_int(long n) { return CycloRational(Rational(n)); }

    /// mu^j for any integer j (reduced mod 12).
    static CycloRational mu_pow(long j) {
        j %= 12;
        if (j < 0) j += 12;
        // mu^6 = -1, so mu^(k+6) = -mu^k.
        CycloRational r;
        long k = j % 6;
        int sign = (j < 6) ? 1 : -1;
        if (k < 4) {
            r.c_[k] = Rational(sign);
        } else if (k == 4) { // mu^4 = mu^2 - 1
            r.c_[2] = Rational(sign);
            r.c_[0] = Rational(-sign);
        } else { // mu^5 = mu^3 - mu
            r.c_[3] = Rational(sign);
            r.c_[1] = Rational(-sign);
        }
        return r;
    }

    const Rational& coord(int i) const { return c_[i]; }

    bool is_zero() const {
        return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
    }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    const Rational& rational_part() const { return c_[0]; }

    friend CycloRational operator+(const CycloRational& a, const CycloRational& b) {
        CycloRational r;
        for (int i = 0; i < 4; ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend CycloRational operator-(const CycloRational& a, const CycloRational& b) {
        CycloRational r;
        for (int i = 0; i < 4; ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    CycloRational operator-() const {
        CycloRational r;
        for (int i = 0; i < 4; ++i) r.c_[i] = -c_[i];
        return r;
    }
    friend CycloRational operator*(const CycloRational& a, const CycloRational& b) {
        // raw degree-6 product, then fold down with
        // mu^4 = mu^2 - 1, mu^5 = mu^3 - mu, mu^6 = -1.
        std::array<Rational, 7> p;
        p.fill(Rational(0));
        for (int i = 0; i < 4; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < 4; ++j) p[i + j] += a.c_[i] * b.c_[j];
        }
        CycloRational r;
        for (int i = 0; i < 4; ++i) r.c_[i] = p[i];
        r.c_[2] += p[4];
        r.c_[0] -= p[4];
        r.c_[3] += p[5];
        r.c_[1] -= p[5];
        r.c_[0] -= p[6];
        return r;
    }
    friend CycloRational operator*(const Rational& a, const CycloRational& b) {
        CycloRational r;
        for (int i = 0; i < 4; ++i) r.c_[i] = a * b.c_[i];
        return r;
    }
    CycloRational& operator+=(const CycloRational& b) { return *this = *this + b; }
    CycloRational& operator-=(const CycloRational& b) { return *this = *this - b; }
    CycloRational& operator*=(const CycloRational& b) { return *this = *this * b; }

    friend bool operator==(const CycloRational& a, const CycloRational& b) {
        return a.c_ == b.c_;
    }

    /// Complex conjugation, mu^j -> mu^(-j).
    CycloRational conj() const {
        CycloRational r;
        for (int i = 0; i < 4; ++i)
            if (c_[i] != 0) r += c_[i] * mu_pow(-i);
        return r;
    }

    /// Field inverse; throws on zero.
    CycloRational inverse() const {
        if (is_zero()) throw std::domain_error("CycloRational: inverse of zero");
        // Solve (this) * x = 1 on the basis, by Gaussian elimination on the
        // 4x4 multiplication-by-this matrix.
        std::array<std::array<Rational, 5>, 4> m;
        for (int col = 0; col < 4; ++col) {
            CycloRational prod = *this * mu_pow(col);
            for (int row = 0; row < 4; ++row) m[row][col] = prod.c_[row];
        }
        for (int row = 0; row < 4; ++row) m[row][4] = Rational(row == 0 ? 1 : 0);
        for (int col = 0; col < 4; ++col) {
            int piv = -1;
            for (int row = col; row < 4; ++row)
                if (m[row][col] != 0) { piv = row; break; }
            if (piv < 0) throw std::logic_error("CycloRational: singular inverse system");
            std::swap(m[col], m[piv]);
            Rational d = m[col][col];
            for (int j = col; j <= 4; ++j) m[col][j] /= d;
            for (int row = 0; row < 4; ++row) {
                if (row == col || m[row][col] == 0) continue;
                Rational f = m[row][col];
                for (int j = col; j <= 4; ++j) m[row][j] -= f * m[col][j];
            }
        }
        return CycloRational(m[0][4], m[1][4], m[2][4], m[3][4]);
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloRational& a) {
        os << "(" << a.c_[0] << "," << a.c_[1] << "," << a.c_[2] << "," << a.c_[3] << ")";
        return os;
    }

private:
    std::array<Rational, 4> c_;
};

} // namespace g2zeta

#endif
