/*
 * test_period.cpp
 * ---------------
 * Period sequences against multinomial oracles, the shift relation,
 * regularized/classical conversion and GL(n,Z) invariance.
 */
#include "doctest.h"

#include "lgforge/errors.hpp"
#include "lgforge/period.hpp"
#include "support.hpp"

using namespace lgforge;
using namespace lgforge::testing;

namespace {

std::vector<Rational> ints(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

std::vector<Rational> regularized(const LaurentPolynomial& f, int N,
                                  PowerMode mode = PowerMode::Full) {
    return period_coefficients(f, N, Flavor::Regularized, mode).rationals();
}

}  // namespace

TEST_SUITE("period") {

TEST_CASE("regularized period examples") {
    CHECK(regularized(parse("x+y+z+1/(x*y*z)", 3), 8) == ints({1, 0, 0, 0, 24, 0, 0, 0, 2520}));
    CHECK(regularized(parse("x+y+1/(x*y)", 2), 6) == ints({1, 0, 0, 6, 0, 0, 90}));
    CHECK(regularized(LaurentPolynomial(3, 0), 5) == ints({1, 0, 0, 0, 0, 0}));
    CHECK(regularized(parse("x+y", 2), 0) == ints({1}));
}

TEST_CASE("period of a parametrized model has parameter coefficients") {
    auto s = period_coefficients(parse("x+y+a1/(x*y)", 2, 1), 6);
    CHECK(s.param_rank == 1);
    CHECK(s.coefficients[3] == parse("6*a1", 0, 1));
    CHECK(s.coefficients[6] == parse("90*a1^2", 0, 1));
    CHECK_THROWS_AS(s.rationals(), DomainError);
}

TEST_CASE("shift_relation_check examples") {
    CHECK(shift_relation_check(parse("x", 1), 1, 5));
    CHECK(shift_relation_check(parse("x+y+1/(x*y)", 2), 0, 8));
    CHECK(shift_relation_check(parse("x+y+1/(x*y)", 2), 3, 8));
}

TEST_CASE("period_equal_up_to_shift examples") {
    auto f = parse("x+y+1/(x*y)", 2);
    CHECK(period_equal_up_to_shift(f, f, 8) == Rational(0));
    CHECK(period_equal_up_to_shift(f, f + LaurentPolynomial::constant(2, 0, 5), 8) == Rational(5));
    auto fy = parse("(x*y+y*z+x*z+1)^2/(x*y*z)", 3);
    auto b2 = parse("(x+y+1)^4/(x*y*z)+z", 3);
    CHECK(period_equal_up_to_shift(fy, b2, 10).has_value());
    CHECK_THROWS_AS(period_equal_up_to_shift(parse("x+a1/x", 1, 1), parse("x+1/x", 1), 4), DomainError);
}

TEST_CASE("period_distinct examples") {
    auto p2 = parse("x+y+1/(x*y)", 2);
    auto p3 = parse("x+y+z+1/(x*y*z)", 3);
    CHECK(period_distinct(p2, p3, 8));
    CHECK_FALSE(period_distinct(p2, apply_monomial_map(p2, {{2, 1}, {1, 1}}), 8));
    CHECK_FALSE(period_distinct(parse("x+1/x", 2), parse("y+1/y", 2), 8));
    CHECK(first_period_mismatch(p2, p3, 8, false) == 3);
    CHECK_FALSE(first_period_mismatch(p2, p2, 8, false).has_value());
}

TEST_CASE("property: multinomial oracle for unit-coefficient sums") {
    Rng rng(21);
    for (int it = 0; it < 30; ++it) {
        const int n = static_cast<int>(uniform(rng, 1, 3));
        std::vector<IntVec> exps;
        std::vector<Rational> coefs;
        const auto l = uniform(rng, 2, 5);
        while (static_cast<long long>(exps.size()) < l) {
            auto v = random_vector(rng, n, -2, 2);
            if (std::find(exps.begin(), exps.end(), v) != exps.end()) continue;
            exps.push_back(v);
            coefs.emplace_back(static_cast<long>(uniform(rng, 1, 3)));
        }
        std::vector<LaurentPolynomial::Term> terms;
        for (size_t i = 0; i < exps.size(); ++i) terms.emplace_back(exp_from(exps[i]), coefs[i]);
        auto f = LaurentPolynomial::from_terms(n, 0, terms);
        auto got = regularized(f, 6);
        for (int d = 0; d <= 6; ++d) CHECK(got[static_cast<size_t>(d)] == multinomial_constant_term(exps, coefs, d));
    }
}

TEST_CASE("property: pruned and full powering agree") {
    Rng rng(22);
    for (int it = 0; it < 40; ++it) {
        auto f = random_polynomial(rng, static_cast<int>(uniform(rng, 1, 3)), 7, 2, 3);
        CHECK(regularized(f, 7, PowerMode::Full) == regularized(f, 7, PowerMode::Pruned));
    }
}

TEST_CASE("property: shift lemma on 100 random instances") {
    Rng rng(23);
    for (int it = 0; it < 100; ++it) {
        auto f = random_polynomial(rng, static_cast<int>(uniform(rng, 1, 3)), 8, 2, 3);
        CHECK(shift_relation_check(f, random_rational(rng, 9, 5), 10));
    }
}

TEST_CASE("property: regularized coefficient is d! times classical") {
    Rng rng(24);
    for (int it = 0; it < 30; ++it) {
        auto f = random_polynomial(rng, static_cast<int>(uniform(rng, 1, 3)), 6, 2, 3);
        auto reg = period_coefficients(f, 8, Flavor::Regularized);
        auto cls = period_coefficients(f, 8, Flavor::Classical);
        auto r = reg.rationals();
        auto c = cls.rationals();
        for (int d = 0; d <= 8; ++d)
            CHECK(r[static_cast<size_t>(d)] == c[static_cast<size_t>(d)] * Rational(factorial(d)));
        CHECK(cls.converted(Flavor::Regularized) == reg);
        CHECK(reg.converted(Flavor::Classical) == cls);
    }
}

TEST_CASE("property: shifts are symmetric and transitive") {
    Rng rng(25);
    for (int it = 0; it < 30; ++it) {
        const int n = static_cast<int>(uniform(rng, 1, 3));
        auto f = random_polynomial(rng, n, 6, 2, 3);
        auto a = random_rational(rng, 5, 3);
        auto b = random_rational(rng, 5, 3);
        auto g = apply_monomial_map(f, random_unimodular(rng, n)) + LaurentPolynomial::constant(n, 0, a);
        auto h = apply_monomial_map(f, random_unimodular(rng, n)) + LaurentPolynomial::constant(n, 0, a + b);
        auto fg = period_equal_up_to_shift(f, g, 8);
        auto gf = period_equal_up_to_shift(g, f, 8);
        auto gh = period_equal_up_to_shift(g, h, 8);
        auto fh = period_equal_up_to_shift(f, h, 8);
        REQUIRE(fg.has_value());
        REQUIRE(gf.has_value());
        REQUIRE(gh.has_value());
        REQUIRE(fh.has_value());
        CHECK(*gf == -*fg);
        CHECK(*fh == *fg + *gh);
        CHECK(*gh == b);
    }
}

TEST_CASE("property: GL(n,Z) invariance") {
    Rng rng(26);
    for (int it = 0; it < 30; ++it) {
        const int n = static_cast<int>(uniform(rng, 1, 3));
        auto f = random_polynomial(rng, n, 7, 2, 3);
        CHECK(regularized(f, 8) == regularized(apply_monomial_map(f, random_unimodular(rng, n)), 8));
    }
}

}  // TEST_SUITE
