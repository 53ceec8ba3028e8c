#ifndef G2ZETA_REDUCE_HPP
#define G2ZETA_REDUCE_HPP

#include "model.hpp"

#include <cassert>
#include <variant>

namespace g2zeta {

// ---------------------------------------------------------------------------
// Rewrite rules
// ---------------------------------------------------------------------------

/// A splitting rule: the pair (x, y) satisfies x + y = c * z with z one of
/// the six canonical forms.
struct RewriteRule {
    const char* id;
    LinearForm x, y, z;
    int c;
    friend bool operator==(const RewriteRule& a, const RewriteRule& b) {
        return std::string_view(a.id) == b.id;
    }
};

inline constexpr RewriteRule kRuleR1{"R1", {1, 0}, {0, 1}, {1, 1}, 1};
inline constexpr RewriteRule kRuleR2{"R2", {1, 3}, {2, 3}, {1, 2}, 3};
inline constexpr RewriteRule kRuleR35{"R35", {1, 1}, {1, 3}, {1, 2}, 2};
inline constexpr RewriteRule kRuleR34{"R34", {1, 1}, {1, 2}, {2, 3}, 1};

inline bool rule_identity_holds(const RewriteRule& r) {
    return r.x.u + r.y.u == r.c * r.z.u && r.x.v + r.y.v == r.c * r.z.v;
}

static_assert(true); // identities are checked in the test suite at startup

// ---------------------------------------------------------------------------
// Terminals
// ---------------------------------------------------------------------------

/// B_{a,b} terminal: support {pure, mixed}.  `root_n` means the pure form is
/// n, in which case the roles of the two coefficients swap.
struct BTerminal {
    int a, b;
    LinearForm pure, mixed;
    bool root_n;
};

/// A_{a,b} terminal: two mixed forms that become ((a+1)p + bq, ap + bq)
/// after scaling by (c1, c2), rooted at pure variable p.  `upper` is the
/// form that scales to the (a+1)-side.
struct ATerminal {
    int a, b;
    LinearForm upper, lower;
    int c1, c2; // scaling of upper / lower
    bool root_n;
    std::optional<LinearForm> pure; // absent when the A-definition's s1 = 0
};

/// Single-form terminal sum_{m,n} (am+bn)^(-s).
struct CountingTerminal {
    int a, b;
};

struct Unreachable {};

using Strategy = std::variant<RewriteRule, BTerminal, ATerminal, CountingTerminal, Unreachable>;

namespace detail {

inline bool contains(const std::vector<LinearForm>& s, LinearForm f) {
    return std::find(s.begin(), s.end(), f) != s.end();
}

/// Try to match {pure?, f, g} as an A-terminal rooted at m (root_n = false)
/// or n (root_n = true): after integer scaling the two mixed forms must get
/// equal coefficients on the non-root variable and consecutive ones on the
/// root variable.
inline std::optional<ATerminal> match_A(std::optional<LinearForm> pure,
                                        LinearForm f, LinearForm g, bool root_n) {
    auto prim = [&](LinearForm h) { return root_n ? h.v : h.u; };
    auto sec = [&](LinearForm h) { return root_n ? h.u : h.v; };
    if (sec(f) == 0 || sec(g) == 0) return std::nullopt;
    int l = std::lcm(sec(f), sec(g));
    int c1 = l / sec(f), c2 = l / sec(g);
    int pf = c1 * prim(f), pg = c2 * prim(g);
    if (pf == pg + 1) {
        ATerminal t{pg, l, f, g, c1, c2, root_n, pure};
        if (12 % std::lcm(std::lcm(t.a, t.a + 1), t.b) == 0) return t;
        return std::nullopt;
    }
    if (pg == pf + 1) {
        ATerminal t{pf, l, g, f, c2, c1, root_n, pure};
        if (12 % std::lcm(std::lcm(t.a, t.a + 1), t.b) == 0) return t;
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace detail

/// Rule/terminal selection for a support set, in the pipeline's priority
/// order: pure-pair split, (m+3n, 2m+3n) split, terminal match, then the
/// two completion splits.
inline Strategy strategy(const std::vector<LinearForm>& support) {
    using detail::contains;
    if (contains(support, {1, 0}) && contains(support, {0, 1})) return kRuleR1;
    if (contains(support, {1, 3}) && contains(support, {2, 3})) return kRuleR2;

    std::vector<LinearForm> pure, mixed;
    for (LinearForm f : support) (f.pure() ? pure : mixed).push_back(f);

    if (support.size() == 1) {
        if (!mixed.empty()) return CountingTerminal{mixed[0].u, mixed[0].v};
        return Unreachable{}; // a lone pure form is divergent
    }
    if (support.size() == 2 && pure.size() == 1 && mixed.size() == 1) {
        bool root_n = pure[0].pure_n();
        int a = root_n ? mixed[0].v : mixed[0].u;
        int b = root_n ? mixed[0].u : mixed[0].v;
        if (12 % std::lcm(a, b) == 0) return BTerminal{a, b, pure[0], mixed[0], root_n};
        return Unreachable{};
    }
    if (mixed.size() == 2 && pure.size() <= 1) {
        std::optional<LinearForm> p =
            pure.empty() ? std::nullopt : std::optional<LinearForm>(pure[0]);
        if (pure.empty()) {
            if (auto t = detail::match_A(p, mixed[0], mixed[1], false)) return *t;
            if (auto t = detail::match_A(p, mixed[0], mixed[1], true)) return *t;
        } else {
            if (auto t = detail::match_A(p, mixed[0], mixed[1], pure[0].pure_n()))
                return *t;
        }
    }
    if (contains(support, {1, 1}) && contains(support, {1, 3})) return kRuleR35;
    if (contains(support, {1, 1}) && contains(support, {1, 2})) return kRuleR34;
    return Unreachable{};
}

// ---------------------------------------------------------------------------
// Lemma split
// ---------------------------------------------------------------------------

/// One branch of the 1/(x^s y^t) partial-fraction expansion.
struct SplitTerm {
    bool x_side;   // keeps x^kept (else y^kept)
    int kept;      // exponent on the kept form
    int merged;    // exponent moved onto x+y
    Int coeff;
};

/// 1/(x^s y^t) = sum of coeff / (kept^kept_exp * (x+y)^merged_exp).
inline std::vector<SplitTerm> lemma_split(int s, int t) {
    if (s < 1 || t < 1) throw std::invalid_argument("lemma_split: s, t must be positive");
    std::vector<SplitTerm> out;
    for (int a = 0; a < s; ++a)
        out.push_back({true, s - a, t + a, binomial(t + a - 1, a)});
    for (int b = 0; b < t; ++b)
        out.push_back({false, t - b, s + b, binomial(s + b - 1, b)});
    return out;
}

/// Apply a rewrite rule to an expression containing both of its forms.
/// The branches sum exactly to the input; each merged exponent on x+y = c*z
/// picks up the factor c^(-merged).
inline std::vector<SumExpr> apply_rule(const SumExpr& e, const RewriteRule& rule) {
    auto ix = e.factors.find(rule.x);
    auto iy = e.factors.find(rule.y);
    if (ix == e.factors.end() || iy == e.factors.end())
        throw std::invalid_argument("apply_rule: rule forms not present");
    int s = ix->second, t = iy->second;
    SumExpr base = e;
    base.factors.erase(rule.x);
    base.factors.erase(rule.y);
    std::vector<SumExpr> out;
    for (const SplitTerm& st : lemma_split(s, t)) {
        SumExpr br = base;
        LinearForm kept = st.x_side ? rule.x : rule.y;
        br.factors[kept] += st.kept;
        br.factors[rule.z] += st.merged;
        Rational c(st.coeff);
        if (rule.c != 1) c *= inv_pow(rule.c, static_cast<unsigned>(st.merged));
        br.coeff = c * e.coeff;
        out.push_back(std::move(br));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Terminal expansions into multi-polylog terms
// ---------------------------------------------------------------------------

namespace detail {
/// mu_N^k as an exponent of mu12.
inline int mu_arg(int N, long k) {
    long j = (k % N) * (12 / N) % 12;
    if (j < 0) j += 12;
    return static_cast<int>(j);
}
} // namespace detail

/// B_{a,b}(r,s) = sum 1/(m^r (am+bn)^s)
///             = (a^(r-1)/b) sum_{j<b, k<a} Li_{s,r}(mu_b^j, mu_a^k mu_b^-j).
inline FormalSum expand_B(int a, int b, int r, int s) {
    if (a < 1 || b < 1 || r < 1 || s < 2)
        throw std::invalid_argument("expand_B: need a,b,r >= 1 and s >= 2");
    if (12 % std::lcm(a, b) != 0)
        throw std::invalid_argument("expand_B: lcm(a,b) must divide 12");
    Rational factor(int_pow(Int(a), static_cast<unsigned>(r - 1)), Int(b));
    FormalSum out;
    for (int j = 0; j < b; ++j)
        for (int k = 0; k < a; ++k)
            out.add(MPVTerm({s, r}, {detail::mu_arg(b, j),
                                     detail::mu_arg(a, k) - detail::mu_arg(b, j)}),
                    CycloRational(factor));
    return out;
}

/// C_{a,b}(s); empty when b = 1.
inline FormalSum expand_C(int a, int b, int s) {
    if (a < 1 || b < 1 || s < 2)
        throw std::invalid_argument("expand_C: need a,b >= 1 and s >= 2");
    if (12 % std::lcm(std::lcm(a, a + 1), b) != 0)
        throw std::invalid_argument("expand_C: lcm(a,a+1,b) must divide 12");
    FormalSum out;
    Rational up(int_pow(Int(a + 1), static_cast<unsigned>(s - 1)));
    Rational down(int_pow(Int(a), static_cast<unsigned>(s - 1)));
    for (int j = 1; j < b; ++j) {
        int jb = detail::mu_arg(b, j);
        for (int k = 0; k <= a; ++k)
            out.add(MPVTerm({1, s}, {jb, detail::mu_arg(a + 1, k) - jb}),
                    CycloRational(up));
        for (int k = 1; k <= a; ++k)
            out.add(MPVTerm({1, s}, {jb, detail::mu_arg(a, k) - jb}),
                    CycloRational(-down));
    }
    return out;
}

/// S_a(s), the regularized diagonal piece.
inline FormalSum expand_S(int a, int s) {
    if (a < 1 || a > 3 || s < 2)
        throw std::invalid_argument("expand_S: need 1 <= a <= 3 and s >= 2");
    FormalSum out;
    Rational down(int_pow(Int(a), static_cast<unsigned>(s - 1)));
    Rational up(int_pow(Int(a + 1), static_cast<unsigned>(s - 1)));
    for (int k = 1; k <= a; ++k) {
        int j = detail::mu_arg(a, k);
        out.add(MPVTerm({s, 1}, {j, 0}), CycloRational(down));
        out.add(MPVTerm({s + 1}, {j}), CycloRational(down));
    }
    for (int k = 1; k <= a + 1; ++k) {
        int j = detail::mu_arg(a + 1, k);
        out.add(MPVTerm({s, 1}, {j, 0}), CycloRational(-up));
        out.add(MPVTerm({s + 1}, {j}), CycloRational(-up));
    }
    return out;
}

/// A_{a,b}(s1,s2,s3) expanded into B, C and S pieces.
inline FormalSum expand_A(int a, int b, int s1, int s2, int s3) {
    if (a < 1 || b < 1 || s1 < 0 || s2 < 0 || s3 < 0)
        throw std::invalid_argument("expand_A: bad arguments");
    if (s2 + s3 <= 1 || s1 + s2 + s3 <= 2)
        throw std::invalid_argument("expand_A: need s2+s3 > 1 and s1+s2+s3 > 2");
    if (s3 == 0) return expand_B(a + 1, b, s1, s2);
    if (s2 == 0) return expand_B(a, b, s1, s3);
    FormalSum out;
    for (int a3 = 0; a3 <= s3 - 2; ++a3) {
        Rational c(binomial(s2 + a3 - 1, a3) * ((a3 % 2) ? Int(-1) : Int(1)));
        out.add(expand_B(a, b, s1 + s2 + a3, s3 - a3).scaled(CycloRational(c)));
    }
    for (int a2 = 0; a2 <= s2 - 2; ++a2) {
        Rational c(binomial(s3 + a2 - 1, a2) * ((s3 % 2) ? Int(-1) : Int(1)));
        out.add(expand_B(a + 1, b, s1 + s3 + a2, s2 - a2).scaled(CycloRational(c)));
    }
    int w1 = s1 + s2 + s3 - 1;
    Rational edge(binomial(s2 + s3 - 2, s3 - 1) * ((s3 % 2) ? Int(-1) : Int(1)), Int(b));
    FormalSum cs = expand_C(a, b, w1);
    cs.add(expand_S(a, w1));
    out.add(cs.scaled(CycloRational(edge)));
    return out;
}

/// sum_{m,n>=1} (am+bn)^(-s) by lattice-point counting per value k:
/// r(k) = k/(ab) + c(k mod lcm(a,b)), the periodic part read off (and
/// cross-checked) at three representatives per residue.
inline FormalSum expand_counting(int a, int b, int s) {
    if (s < 3) throw std::invalid_argument("expand_counting: need s >= 3");
    if (std::gcd(a, b) != 1 || 12 % std::lcm(a, b) != 0)
        throw std::invalid_argument("expand_counting: unsupported form");
    int L = std::lcm(a, b);
    auto count = [&](long k) {
        long c = 0;
        for (long m = 1; a * m + b <= k; ++m)
            if ((k - a * m) % b == 0) ++c;
        return c;
    };
    std::vector<Rational> corr(L + 1);
    for (int res = 1; res <= L; ++res) {
        Rational c0 = Rational(count(res)) - Rational(res, a * b);
        Rational c1 = Rational(count(res + L)) - Rational(res + L, a * b);
        Rational c2 = Rational(count(res + 2 * L)) - Rational(res + 2 * L, a * b);
        if (c0 != c1 || c1 != c2)
            throw std::logic_error("expand_counting: representation count not periodic");
        corr[res] = c0;
    }
    FormalSum out;
    out.add(MPVTerm({s - 1}, {0}), CycloRational(Rational(1, a * b)));
    for (int j = 0; j < L; ++j) {
        CycloRational coeff;
        for (int res = 1; res <= L; ++res)
            coeff += corr[res] * CycloRational::mu_pow(-detail::mu_arg(L, static_cast<long>(j) * res));
        coeff = Rational(1, L) * coeff;
        out.add(MPVTerm({s}, {detail::mu_arg(L, j)}), coeff);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The reduction driver
// ---------------------------------------------------------------------------

namespace detail {

struct Reducer {
    std::map<std::map<LinearForm, int>, FormalSum> memo;
    std::vector<TraceStep>* trace = nullptr;

    FormalSum run(const SumExpr& e) {
        auto it = memo.find(e.factors);
        if (it != memo.end()) return it->second.scaled(e.coeff);

        SumExpr unit = e;
        unit.coeff = CycloRational::from_int(1);
        Strategy st = strategy(e.support());
        FormalSum result;

        if (auto* rule = std::get_if<RewriteRule>(&st)) {
            if (trace)
                trace->push_back({rule->id, rule->x, rule->y, rule->z,
                                  {Rational(rule->c)}});
            for (const SumExpr& br : apply_rule(unit, *rule)) result.add(run(br));
        } else if (auto* bt = std::get_if<BTerminal>(&st)) {
            int r = unit.factors.at(bt->pure);
            int s = unit.factors.at(bt->mixed);
            if (trace)
                trace->push_back({"B(" + std::to_string(bt->a) + "," + std::to_string(bt->b) + ")",
                                  bt->pure, bt->mixed, bt->pure, {Rational(1)}});
            result = expand_B(bt->a, bt->b, r, s);
        } else if (auto* at = std::get_if<ATerminal>(&st)) {
            int s1 = at->pure ? unit.factors.at(*at->pure) : 0;
            int s2 = unit.factors.at(at->upper);
            int s3 = unit.factors.at(at->lower);
            // 1/F^e = c^e / (cF)^e for each scaled form
            Rational scale(int_pow(Int(at->c1), static_cast<unsigned>(s2)) *
                           int_pow(Int(at->c2), static_cast<unsigned>(s3)));
            if (trace)
                trace->push_back({"A(" + std::to_string(at->a) + "," + std::to_string(at->b) + ")",
                                  at->upper, at->lower,
                                  at->pure.value_or(LinearForm{0, 0}),
                                  {Rational(at->c1), Rational(at->c2)}});
            result = expand_A(at->a, at->b, s1, s2, s3).scaled(CycloRational(scale));
        } else if (auto* ct = std::get_if<CountingTerminal>(&st)) {
            int s = unit.factors.begin()->second;
            if (trace)
                trace->push_back({"count(" + std::to_string(ct->a) + "," + std::to_string(ct->b) + ")",
                                  {ct->a, ct->b}, {ct->a, ct->b}, {ct->a, ct->b},
                                  {Rational(1)}});
            result = expand_counting(ct->a, ct->b, s);
        } else {
            throw std::logic_error("strategy: unreachable support (engine bug)");
        }

        memo.emplace(e.factors, result);
        return result.scaled(e.coeff);
    }
};

} // namespace detail

/// Reduce a convergent tuple to its exact formal sum, with derivation trace.
inline Certificate reduce(const InputTuple& t) {
    Certificate cert;
    cert.input = t;
    cert.classification = classify(t);
    if (!cert.classification.convergent)
        throw std::invalid_argument("reduce: divergent input " + t.str() + ": " +
                                    cert.classification.divergence_reason);
    detail::Reducer r;
    r.trace = &cert.trace;
    cert.result = r.run(tuple_to_sumexpr(t));
    cert.all_rational = cert.result.all_rational();
    return cert;
}

} // namespace g2zeta

#endif
