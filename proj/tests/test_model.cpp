#include <g2zeta/json_io.hpp>
#include <g2zeta/model.hpp>

#include <catch_amalgamated.hpp>

using namespace g2zeta;

TEST_CASE("classification of divergent tuples names the failed inequality") {
    auto c = classify(InputTuple{{3, 0, 1, 0, 0, 0}});
    CHECK_FALSE(c.convergent);
    CHECK(c.divergence_reason == "w-s1>1 fails");
    c = classify(InputTuple{{0, 3, 0, 2, 0, 0}});
    CHECK(c.convergent);
    c = classify(InputTuple{{0, 4, 0, 0, 0, 0}});
    CHECK_FALSE(c.convergent);
    CHECK(c.divergence_reason == "w-s2>1 fails");
    c = classify(InputTuple{{0, 0, 1, 1, 0, 0}});
    CHECK_FALSE(c.convergent);
    CHECK(c.divergence_reason == "w>2 fails");
}

TEST_CASE("classification recognizes single-form shapes") {
    auto c = classify(InputTuple{{0, 0, 0, 0, 3, 0}});
    REQUIRE(c.convergent);
    CHECK(c.shape == ConvergenceShape::SingleForm);
    CHECK(c.single_form == LinearForm{1, 3});

    c = classify(InputTuple{{0, 0, 3, 0, 0, 0}});
    CHECK(c.shape == ConvergenceShape::SingleForm);
    CHECK(c.single_form == LinearForm{1, 1});

    c = classify(InputTuple{{0, 0, 2, 1, 0, 0}});
    CHECK(c.shape == ConvergenceShape::Regular);
    c = classify(InputTuple{{1, 0, 0, 0, 2, 0}});
    CHECK(c.shape == ConvergenceShape::Regular);
}

TEST_CASE("uniform tuples of weight >= 6 are convergent") {
    for (int s = 1; s <= 4; ++s)
        CHECK(classify(InputTuple{{s, s, s, s, s, s}}).convergent);
}

TEST_CASE("tuple to product expression") {
    SumExpr e = tuple_to_sumexpr(InputTuple{{1, 0, 0, 1, 0, 1}});
    CHECK(e.weight() == 3);
    CHECK(e.support() ==
          std::vector<LinearForm>{{1, 0}, {1, 2}, {2, 3}});
    CHECK(e.coeff == CycloRational::from_int(1));
    CHECK_THROWS_AS(tuple_to_sumexpr(InputTuple{{0, 0, 2, 0, 0, 0}}),
                    std::invalid_argument);
}

TEST_CASE("polylog terms normalize arguments and reject divergent pairs") {
    MPVTerm t({2, 1}, {14, -5});
    CHECK(t.args() == std::vector<int>{2, 7});
    CHECK(t.weight() == 3);
    CHECK(t.depth() == 2);
    CHECK_THROWS_AS(MPVTerm({1, 2}, {0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(MPVTerm({1}, {12}), std::invalid_argument);
    CHECK_THROWS_AS(MPVTerm({0}, {3}), std::invalid_argument);
    CHECK_NOTHROW(MPVTerm({2}, {0}));
    CHECK_NOTHROW(MPVTerm({1, 1}, {6, 6}));
}

TEST_CASE("term level is the common order of its arguments") {
    CHECK(MPVTerm({3}, {0}).level() == 1);
    CHECK(MPVTerm({3}, {6}).level() == 2);
    CHECK(MPVTerm({2, 1}, {4, 8}).level() == 3);
    CHECK(MPVTerm({2, 1}, {3, 6}).level() == 4);
    CHECK(MPVTerm({2, 1}, {1, 0}).level() == 12);
    CHECK(12 % MPVTerm({2, 1}, {10, 9}).level() == 0);
}

TEST_CASE("formal sums merge and cancel") {
    FormalSum fs;
    MPVTerm t({2}, {0});
    fs.add(t, CycloRational(Rational(1, 2)));
    fs.add(t, CycloRational(Rational(1, 3)));
    CHECK(fs.size() == 1);
    CHECK(fs.terms().at(t) == CycloRational(Rational(5, 6)));
    fs.add(t, CycloRational(Rational(-5, 6)));
    CHECK(fs.empty());

    fs.add(t, CycloRational::mu_pow(3));
    CHECK_FALSE(fs.all_rational());
    FormalSum sc = fs.scaled(CycloRational::mu_pow(-3));
    CHECK(sc.all_rational());
    CHECK(sc.terms().at(t) == CycloRational::from_int(1));
}

TEST_CASE("certificate JSON round trip") {
    Certificate cert;
    cert.input = InputTuple{{1, 0, 0, 1, 0, 1}};
    cert.classification = classify(cert.input);
    cert.result.add(MPVTerm({2, 1}, {4, 8}), CycloRational(Rational(1, 3)));
    cert.result.add(MPVTerm({3}, {0}),
                    CycloRational(Rational(1), Rational(-2, 5), Rational(0), Rational(7)));
    cert.trace.push_back({"A(3,6)", {2, 3}, {1, 2}, {1, 0},
                          {Rational(2), Rational(3)}});
    cert.all_rational = cert.result.all_rational();

    json j = to_json(cert);
    CHECK(j["classification"] == "regular");
    CHECK(j["weight"] == 3);
    Certificate back = certificate_from_json(j);
    CHECK(back.input == cert.input);
    CHECK(back.result == cert.result);
    CHECK(back.trace == cert.trace);
    CHECK(back.all_rational == cert.all_rational);
}

TEST_CASE("linear form strings parse back") {
    for (LinearForm f : kCanonicalForms)
        CHECK(form_from_json(json(f.str())) == f);
}
