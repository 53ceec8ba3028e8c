#ifndef G2ZETA_ACCEPTANCE_HPP
#define G2ZETA_ACCEPTANCE_HPP

#include "oracle.hpp"
#include "polylog.hpp"
#include "reduce.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

namespace g2zeta::acceptance {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string id;
    std::string summary;
    std::function<Outcome()> run;
};

namespace detail {

inline Real seconds_since(std::chrono::steady_clock::time_point t0) {
    return Real(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

inline std::string sci(const Real& x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << static_cast<double>(x);
    return os.str();
}

/// |evaluate(reduce(t)) - reference| checked against tol; the reference
/// string must carry enough digits for the comparison.
inline Outcome match_reference(const InputTuple& t, const std::string& ref,
                               int digits, const Real& tol, Real* out_diff = nullptr) {
    PrecisionContext ctx(digits);
    ctx.activate();
    Real reference(ref);
    Certificate cert = reduce(t);
    EvalResult v = evaluate(cert.result, ctx);
    Real diff = fabs(v.value.re - reference);
    if (out_diff) *out_diff = diff;
    Outcome o;
    o.pass = diff <= tol && fabs(v.value.im) <= v.error_bound && v.error_bound <= tol;
    o.detail = t.str() + " diff " + sci(diff) + ", bound " + sci(v.error_bound);
    return o;
}

inline void for_each_tuple_up_to(int max_weight,
                                 const std::function<void(const InputTuple&)>& fn) {
    std::array<int, 6> s{};
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == 6) {
            fn(InputTuple{s});
            return;
        }
        for (int v = 0; v <= left; ++v) {
            s[pos] = v;
            self(self, pos + 1, left - v);
        }
        s[pos] = 0;
    };
    rec(rec, 0, max_weight);
}

} // namespace detail

inline const std::vector<std::string> kWeight7References = {
    "0.00995272345287837349624059820619791150631359962925",
    "0.01051743558635248267821710084904837131835692774970",
    "0.00497203096318456908722247199264938834521998397322",
    "0.00334830993415208689505176677618470935993308677601",
    "0.00252989581107351464804145549755978591413008088242",
    "0.00199953266044219311834226765773032132006109764665"};

inline const std::vector<InputTuple> kWeight7Tuples = {
    InputTuple{{2, 1, 1, 1, 1, 1}}, InputTuple{{1, 2, 1, 1, 1, 1}},
    InputTuple{{1, 1, 2, 1, 1, 1}}, InputTuple{{1, 1, 1, 2, 1, 1}},
    InputTuple{{1, 1, 1, 1, 2, 1}}, InputTuple{{1, 1, 1, 1, 1, 2}}};

inline Outcome check_worked_example() {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = detail::match_reference(
        InputTuple{{1, 0, 0, 1, 0, 1}},
        "0.29118204074051670279981404910049215137872186455887",
        60, Real("1e-30"));
    Real secs = detail::seconds_since(t0);
    o.pass = o.pass && secs < 30;
    o.detail += ", " + detail::sci(secs) + " s (limit 30)";
    return o;
}

inline Outcome check_uniform_weight6() {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = detail::match_reference(
        InputTuple{{1, 1, 1, 1, 1, 1}},
        "0.01110008020419022277039637092289017833699879038194",
        40, Real("1e-30"));
    Real secs = detail::seconds_since(t0);
    o.pass = o.pass && secs < 60;
    o.detail += ", " + detail::sci(secs) + " s (limit 60)";
    return o;
}

inline Outcome check_weight7_values() {
    Outcome all{true, ""};
    Real worst = 0;
    for (size_t i = 0; i < kWeight7Tuples.size(); ++i) {
        Real diff;
        Outcome o = detail::match_reference(kWeight7Tuples[i], kWeight7References[i],
                                            40, Real("1e-30"), &diff);
        all.pass = all.pass && o.pass;
        if (diff > worst) worst = diff;
    }
    all.detail = "6 tuples, worst diff " + detail::sci(worst);
    return all;
}

inline Outcome check_uniform_weight12_pi() {
    InputTuple t{{2, 2, 2, 2, 2, 2}};
    Outcome o = detail::match_reference(
        t, "0.00007135906438752907355938750633729102655371125360", 40, Real("1e-30"));
    PrecisionContext ctx(40);
    ctx.activate();
    Certificate cert = reduce(t);
    EvalResult v = evaluate(cert.result, ctx);
    Rational c(Int(5 * 5 * 5 * 23),
               int_pow(Int(3), 12) * int_pow(Int(7), 2) * 11 * 13);
    EvalResult p12 = pi_times(12, ctx);
    ctx.activate();
    Real closed = to_real(c) * p12.value.re;
    Real diff = fabs(v.value.re - closed);
    o.pass = o.pass && diff <= Real("1e-30");
    o.detail += ", pi^12 diff " + detail::sci(diff);
    return o;
}

inline Outcome check_oracle_cross_validation() {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o{true, ""};

    PrecisionContext dctx(15);
    Real p300 = oracle_partial_sum(InputTuple{{1, 1, 1, 1, 1, 1}}, 300, dctx);
    Real pdiff = fabs(p300 - Real("0.01110008013"));
    if (pdiff > Real("5e-11")) o.pass = false;

    PrecisionContext ectx(30);
    Real worst = 0;
    int n = 0;
    detail::for_each_tuple_up_to(5, [&](const InputTuple& t) {
        if (!classify(t).convergent) return;
        ++n;
        Certificate cert = reduce(t);
        EvalResult v = evaluate(cert.result, ectx);
        OracleResult r = extrapolate(t, 800, 3, dctx);
        ectx.activate();
        Real diff = fabs(v.value.re - Real(r.extrapolated));
        if (diff > worst) worst = diff;
    });
    Real secs = detail::seconds_since(t0);
    o.pass = o.pass && worst <= Real("1e-6") && secs < 600;
    o.detail = "partial(300) diff " + detail::sci(pdiff) + ", sweep " +
               std::to_string(n) + " tuples worst " + detail::sci(worst) + ", " +
               detail::sci(secs) + " s (limit 600)";
    return o;
}

inline Outcome check_counting_identities() {
    Outcome o{true, ""};
    for (int s : {3, 4, 5}) {
        FormalSum expect;
        expect.add(MPVTerm({s - 1}, {0}), CycloRational::from_int(1));
        expect.add(MPVTerm({s}, {0}), CycloRational::from_int(-1));
        if (!(reduce(InputTuple{{0, 0, s, 0, 0, 0}}).result == expect)) o.pass = false;
    }
    FormalSum expect;
    CycloRational third(Rational(1, 3));
    expect.add(MPVTerm({2, 1}, {0, 0}), third);
    expect.add(MPVTerm({2, 1}, {4, 8}), third);
    expect.add(MPVTerm({2, 1}, {8, 4}), third);
    if (!(reduce(InputTuple{{1, 0, 0, 0, 2, 0}}).result == expect)) o.pass = false;
    o.detail = "term-for-term on (m+n)^-s, s=3..5, and m^-1(m+3n)^-2";
    return o;
}

inline Outcome check_exhaustive_weight6() {
    Outcome o{true, ""};
    int n = 0, irrational = 0;
    detail::for_each_tuple_up_to(6, [&](const InputTuple& t) {
        if (!o.pass || !classify(t).convergent) return;
        ++n;
        Certificate cert = reduce(t);
        bool shape_irrational = false;
        {
            // only the two single forms with a non-split lattice direction
            // escape the rationals
            InputTuple a{}, b{};
            a.s[4] = t.s[4];
            b.s[5] = t.s[5];
            shape_irrational = (t == a) || (t == b);
        }
        if (cert.all_rational == shape_irrational) { o.pass = false; return; }
        if (shape_irrational) ++irrational;
        bool single = cert.classification.shape == ConvergenceShape::SingleForm;
        for (auto& [term, c] : cert.result.terms()) {
            // the lattice-counting zeta(w-1) term is the one weight exception
            bool counting_drop = single && term.depth() == 1 &&
                                 term.args()[0] == 0 &&
                                 term.weight() == t.weight() - 1;
            if ((term.weight() != t.weight() && !counting_drop) ||
                term.depth() > 2 || 12 % term.level() != 0) {
                o.pass = false;
                return;
            }
        }
    });
    PrecisionContext ectx(30), dctx(15);
    Real worst = 0;
    for (int slot : {4, 5})
        for (int s = 3; s <= 6; ++s) {
            InputTuple t{};
            t.s[slot] = s;
            EvalResult v = evaluate(reduce(t).result, ectx);
            OracleResult r = extrapolate(t, 400, 3, dctx);
            ectx.activate();
            Real diff = fabs(v.value.re - Real(r.extrapolated));
            if (diff > worst) worst = diff;
        }
    o.pass = o.pass && worst <= Real("1e-6");
    o.detail = std::to_string(n) + " tuples, " + std::to_string(irrational) +
               " with irrational coefficients, oracle worst " + detail::sci(worst);
    return o;
}

inline Outcome check_property_suites() {
    Outcome o{true, ""};

    { // partial-fraction split, 1000 exact rational instances
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> exp_d(1, 5), num_d(1, 40), den_d(1, 12);
        auto rat_pow = [](Rational x, int e) {
            Rational r(1);
            for (int i = 0; i < e; ++i) r *= x;
            return r;
        };
        for (int it = 0; it < 1000 && o.pass; ++it) {
            int s = exp_d(rng), t = exp_d(rng);
            Rational x(num_d(rng), den_d(rng)), y(num_d(rng), den_d(rng));
            Rational lhs = Rational(1) / (rat_pow(x, s) * rat_pow(y, t));
            Rational rhs(0);
            for (const SplitTerm& st : lemma_split(s, t))
                rhs += Rational(st.coeff) /
                       (rat_pow(st.x_side ? x : y, st.kept) * rat_pow(x + y, st.merged));
            if (lhs != rhs) o.pass = false;
        }
    }

    PrecisionContext ctx(30);
    { // series shuffle of depth-1 products, 30 random pairs
        std::mt19937 rng(1234);
        std::uniform_int_distribution<int> exp_d(1, 4), arg_d(0, 11);
        int done = 0;
        while (done < 30 && o.pass) {
            int s1 = exp_d(rng), s2 = exp_d(rng), j1 = arg_d(rng), j2 = arg_d(rng);
            if ((s1 == 1 && j1 == 0) || (s2 == 1 && j2 == 0)) continue;
            ++done;
            EvalResult a = li_depth1(s1, j1, ctx), b = li_depth1(s2, j2, ctx);
            EvalResult ab = li_depth2(s1, s2, j1, j2, ctx);
            EvalResult ba = li_depth2(s2, s1, j2, j1, ctx);
            EvalResult d = li_depth1(s1 + s2, j1 + j2, ctx);
            ctx.activate();
            Real slack = a.error_bound * b.value.abs() + b.error_bound * a.value.abs() +
                         ab.error_bound + ba.error_bound + d.error_bound + Real("1e-33");
            if ((a.value * b.value - (ab.value + ba.value + d.value)).abs() > slack)
                o.pass = false;
        }
    }

    { // conjugation symmetry and real outputs
        for (auto [s1, s2, j1, j2] : {std::array{2, 1, 5, 3}, {1, 2, 7, 8}}) {
            EvalResult v = li_depth2(s1, s2, j1, j2, ctx);
            EvalResult w = li_depth2(s1, s2, 12 - j1, 12 - j2, ctx);
            ctx.activate();
            if ((w.value - v.value.conj()).abs() > v.error_bound + w.error_bound)
                o.pass = false;
        }
        for (const InputTuple& t :
             {InputTuple{{1, 0, 0, 1, 0, 1}}, InputTuple{{0, 0, 0, 0, 3, 0}}}) {
            EvalResult v = evaluate(reduce(t).result, ctx);
            ctx.activate();
            if (fabs(v.value.im) > v.error_bound) o.pass = false;
        }
    }

    { // the rewrite graph on support sets has no cycles
        auto idx = [](LinearForm f) {
            for (int i = 0; i < 6; ++i)
                if (kCanonicalForms[i] == f) return i;
            return -1;
        };
        std::array<int, 64> state{};
        bool acyclic = true;
        auto dfs = [&](auto&& self, int mask) -> void {
            if (state[mask] == 2 || !acyclic) return;
            if (state[mask] == 1) { acyclic = false; return; }
            state[mask] = 1;
            std::vector<LinearForm> support;
            for (int i = 0; i < 6; ++i)
                if (mask & (1 << i)) support.push_back(kCanonicalForms[i]);
            Strategy st = strategy(support);
            if (auto* rule = std::get_if<RewriteRule>(&st)) {
                int base = mask & ~(1 << idx(rule->x)) & ~(1 << idx(rule->y));
                self(self, base | (1 << idx(rule->x)) | (1 << idx(rule->z)));
                self(self, base | (1 << idx(rule->y)) | (1 << idx(rule->z)));
            }
            state[mask] = 2;
        };
        for (int mask = 1; mask < 64; ++mask) dfs(dfs, mask);
        o.pass = o.pass && acyclic;
    }

    o.detail = "split fuzz, shuffle, conjugation, imaginary bound, termination";
    return o;
}

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> cs = {
        {"worked-example", "three-form tuple at 60 digits vs reference", check_worked_example},
        {"uniform-weight-6", "(1,1,1,1,1,1) vs reference", check_uniform_weight6},
        {"weight-7-values", "six weight-7 tuples vs references", check_weight7_values},
        {"uniform-weight-12-pi", "(2,2,2,2,2,2) vs reference and pi^12 multiple",
         check_uniform_weight12_pi},
        {"oracle-cross-check", "double-sum oracle vs exact pipeline, weight <= 5",
         check_oracle_cross_validation},
        {"counting-identities", "term-for-term closed forms", check_counting_identities},
        {"exhaustive-weight-6", "invariants and rationality over all tuples of weight <= 6",
         check_exhaustive_weight6},
        {"property-suites", "exact and numeric property fuzzing", check_property_suites},
    };
    return cs;
}

} // namespace g2zeta::acceptance

#endif
