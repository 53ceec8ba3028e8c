#ifndef G2ZETA_MODEL_HPP
#define G2ZETA_MODEL_HPP

#include "cyclo.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

namespace g2zeta {

/// A linear form u*m + v*n with nonnegative coefficients, (u,v) != (0,0).
struct LinearForm {
    int u = 0;
    int v = 0;
    friend auto operator<=>(const LinearForm&, const LinearForm&) = default;
    bool pure_m() const { return v == 0; }
    bool pure_n() const { return u == 0; }
    bool pure() const { return u == 0 || v == 0; }
    long at(long m, long n) const { return static_cast<long>(u) * m + static_cast<long>(v) * n; }
    std::string str() const {
        return std::to_string(u) + "*m+" + std::to_string(v) + "*n";
    }
};

/// The six positive-root forms of g2, slot order matching the exponent tuple.
inline constexpr std::array<LinearForm, 6> kCanonicalForms = {
    LinearForm{1, 0}, LinearForm{0, 1}, LinearForm{1, 1},
    LinearForm{1, 2}, LinearForm{1, 3}, LinearForm{2, 3}};

/// Exponent tuple (s1,...,s6) of a zeta_g2 special value.
struct InputTuple {
    std::array<int, 6> s{};
    int weight() const { return std::accumulate(s.begin(), s.end(), 0); }
    friend auto operator<=>(const InputTuple&, const InputTuple&) = default;
    std::string str() const {
        std::string r = "(";
        for (int i = 0; i < 6; ++i) r += std::to_string(s[i]) + (i < 5 ? "," : ")");
        return r;
    }
};

enum class ConvergenceShape { Regular, SingleForm };

struct Classification {
    bool convergent = false;
    ConvergenceShape shape = ConvergenceShape::Regular;
    LinearForm single_form{};           // valid when shape == SingleForm
    std::string divergence_reason;      // valid when !convergent
    friend bool operator==(const Classification&, const Classification&) = default;
};

/// Convergence test from the weight inequalities w-s1>1, w-s2>1, w>2.
inline Classification classify(const InputTuple& t) {
    Classification c;
    int w = t.weight();
    if (w - t.s[0] <= 1) { c.divergence_reason = "w-s1>1 fails"; return c; }
    if (w - t.s[1] <= 1) { c.divergence_reason = "w-s2>1 fails"; return c; }
    if (w <= 2) { c.divergence_reason = "w>2 fails"; return c; }
    c.convergent = true;
    if (t.s[0] == 0 && t.s[1] == 0) {
        int nonzero = -1, count = 0;
        for (int i = 2; i < 6; ++i)
            if (t.s[i] > 0) { nonzero = i; ++count; }
        if (count == 1) {
            c.shape = ConvergenceShape::SingleForm;
            c.single_form = kCanonicalForms[nonzero];
        }
    }
    return c;
}

/// coeff * sum_{m,n>=1} prod L(m,n)^(-e) over the given (form, exponent) pairs.
struct SumExpr {
    CycloRational coeff = CycloRational::from_int(1);
    std::map<LinearForm, int> factors;

    int weight() const {
        int w = 0;
        for (auto& [f, e] : factors) w += e;
        return w;
    }
    std::vector<LinearForm> support() const {
        std::vector<LinearForm> s;
        for (auto& [f, e] : factors) s.push_back(f);
        return s;
    }
};

inline SumExpr tuple_to_sumexpr(const InputTuple& t) {
    if (!classify(t).convergent)
        throw std::invalid_argument("tuple_to_sumexpr: divergent tuple " + t.str());
    SumExpr e;
    for (int i = 0; i < 6; ++i)
        if (t.s[i] > 0) e.factors[kCanonicalForms[i]] = t.s[i];
    return e;
}

/// One multi-polylog value Li_{t1..td}(mu12^j1, ..., mu12^jd), d <= 2,
/// sequences stored outermost first.
class MPVTerm {
public:
    MPVTerm(std::vector<int> exponents, std::vector<int> args)
        : exps_(std::move(exponents)), args_(std::move(args)) {
        if (exps_.empty() || exps_.size() > 2 || exps_.size() != args_.size())
            throw std::invalid_argument("MPVTerm: depth must be 1 or 2");
        for (int& a : args_) { a %= 12; if (a < 0) a += 12; }
        for (int e : exps_)
            if (e < 1) throw std::invalid_argument("MPVTerm: exponents must be positive");
        if (exps_[0] == 1 && args_[0] == 0)
            throw std::invalid_argument("MPVTerm: divergent leading pair (1, 1)");
    }

    int depth() const { return static_cast<int>(exps_.size()); }
    const std::vector<int>& exponents() const { return exps_; }
    const std::vector<int>& args() const { return args_; }
    int weight() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

    /// Least N with N*j = 0 mod 12 for every argument exponent j.
    int level() const {
        int g = 12;
        for (int a : args_) g = std::gcd(g, a);
        return 12 / g;
    }

    friend auto operator<=>(const MPVTerm&, const MPVTerm&) = default;

    std::string str() const {
        std::ostringstream os;
        os << "Li_{";
        for (size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
        os << "}(";
        for (size_t i = 0; i < args_.size(); ++i) os << (i ? ", " : "") << "mu12^" << args_[i];
        os << ")";
        return os.str();
    }

private:
    std::vector<int> exps_;
    std::vector<int> args_;
};

/// Finite CycloRational-linear combination of MPVTerms.
class FormalSum {
public:
    FormalSum() = default;

    void add(const MPVTerm& t, const CycloRational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(t);
        if (it == terms_.end()) {
            terms_.emplace(t, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add(const FormalSum& other) {
        for (auto& [t, c] : other.terms_) add(t, c);
    }
    FormalSum scaled(const CycloRational& c) const {
        FormalSum r;
        if (c.is_zero()) return r;
        for (auto& [t, k] : terms_) r.add(t, c * k);
        return r;
    }

    const std::map<MPVTerm, CycloRational>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    bool all_rational() const {
        for (auto& [t, c] : terms_)
            if (!c.is_rational()) return false;
        return true;
    }

    friend bool operator==(const FormalSum& a, const FormalSum& b) {
        return a.terms_ == b.terms_;
    }

private:
    std::map<MPVTerm, CycloRational> terms_;
};

/// One recorded derivation step of the reduction engine.
struct TraceStep {
    std::string rule;                 // "R1", "R2", "R34", "R35", "A(3,6)", ...
    LinearForm pair_x{}, pair_y{};    // the forms split / matched
    LinearForm sum_form{};            // the rule's sum form, or the terminal's root
    std::vector<Rational> scale;      // branch scalars
    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// The auditable output of reduce(): input, classification, exact formal
/// sum, and the derivation trace.
struct Certificate {
    InputTuple input;
    Classification classification;
    FormalSum result;
    std::vector<TraceStep> trace;
    bool all_rational = true;
};

} // namespace g2zeta

#endif
