/*
 * test_mutation.cpp
 * -----------------
 * Gradings, mutations, inverses and chains, including period invariance on
 * randomly generated mutable polynomials.
 */
#include "doctest.h"

#include "lgforge/errors.hpp"
#include "lgforge/mutation.hpp"
#include "support.hpp"

using namespace lgforge;
using namespace lgforge::testing;

namespace {

IntVec random_primitive(Rng& rng, int n) {
    for (;;) {
        auto w = random_vector(rng, n, -2, 2);
        long long g = 0;
        for (auto x : w) g = std::gcd(g, x);
        if (g == 1) return w;
    }
}

// Monomial with weight k under w, drawn from the box [-2,2]^n.
std::optional<IntVec> random_of_weight(Rng& rng, const IntVec& w, long long k) {
    for (int tries = 0; tries < 400; ++tries) {
        auto v = random_vector(rng, static_cast<int>(w.size()), -2, 2);
        long long s = 0;
        for (size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
        if (s == k) return v;
    }
    return std::nullopt;
}

LaurentPolynomial random_of_grade(Rng& rng, const IntVec& w, long long k, size_t terms) {
    const int n = static_cast<int>(w.size());
    std::vector<LaurentPolynomial::Term> out;
    for (size_t i = 0; i < terms; ++i)
        if (auto v = random_of_weight(rng, w, k))
            out.emplace_back(exp_from(*v), Rational(static_cast<long>(uniform(rng, 1, 3))));
    return LaurentPolynomial::from_terms(n, 0, out);
}

struct Instance {
    LaurentPolynomial f;
    MutationData m;
};

// f = sum_{k<0} a^{-k} g_k + (part of nonnegative weight), so mutate(f) exists.
Instance random_mutable(Rng& rng, int n) {
    auto w = random_primitive(rng, n);
    auto a = LaurentPolynomial::constant(n, 0, 1) + random_of_grade(rng, w, 0, 2);
    if (a.is_zero()) a = LaurentPolynomial::constant(n, 0, 1);
    auto f = random_of_grade(rng, w, 1, 2) + random_of_grade(rng, w, 0, 1);
    for (long long k = 1; k <= 2; ++k)
        f = f + multiply(power(a, static_cast<unsigned>(k)), random_of_grade(rng, w, -k, 1));
    if (f.is_zero()) f = LaurentPolynomial::constant(n, 0, 1);
    return {f, MutationData::make(w, a)};
}

}  // namespace

TEST_SUITE("mutation") {

TEST_CASE("grade_by_weight examples") {
    auto g = grade_by_weight(parse("x+y+1/(x*y)", 2), {1, 0});
    CHECK(g.size() == 3);
    CHECK(g.at(1) == parse("x", 2));
    CHECK(g.at(0) == parse("y", 2));
    CHECK(g.at(-1) == parse("1/(x*y)", 2));
    auto c = grade_by_weight(LaurentPolynomial::constant(2, 0, 3), {2, 5});
    CHECK(c.size() == 1);
    CHECK(c.at(0) == LaurentPolynomial::constant(2, 0, 3));
    auto q = grade_by_weight(parse("(x+1)^2/(x*y*z)+y+z", 3), {0, 1, 1});
    CHECK(q.size() == 2);
    CHECK(q.at(-2) == parse("(x+1)^2/(x*y*z)", 3));
    CHECK(q.at(1) == parse("y+z", 3));
    CHECK_THROWS_AS(grade_by_weight(parse("x", 2), {0, 0}), DomainError);
}

TEST_CASE("mutate examples") {
    auto f = parse("(x+1)^2/(x*y*z)+y+z", 3);
    auto m = MutationData::make({0, 1, 1}, parse("x+1", 3));
    auto g = mutate(f, m);
    CHECK(render(g) == "x*y+x*z+y+z+1/(x*y*z)");
    CHECK(mutate(f, MutationData::make({0, 1, 1}, LaurentPolynomial::constant(3, 0, 1))) == f);
    CHECK_THROWS_AS(mutate(parse("1/x", 2), MutationData::make({1, 0}, parse("1+y", 2))), NotMutable);
}

TEST_CASE("invert_mutation examples") {
    auto m = MutationData::make({0, 1, 1}, parse("x+1", 3));
    CHECK(invert_mutation(parse("x*y+x*z+y+z+1/(x*y*z)", 3), m) == parse("(x+1)^2/(x*y*z)+y+z", 3));
    auto f = parse("x+1/y", 2);
    CHECK(invert_mutation(f, MutationData::make({1, 0}, LaurentPolynomial::constant(2, 0, 1))) == f);
    CHECK_THROWS_AS(invert_mutation(parse("x", 2), MutationData::make({1, 0}, parse("1+y", 2))), NotMutable);
}

TEST_CASE("MutationData invariants") {
    CHECK_THROWS_AS(MutationData::make({0, 2}, parse("1+x", 2)), DomainError);
    CHECK_THROWS_AS(MutationData::make({1, 0}, parse("1+x", 2)), DomainError);
    CHECK_NOTHROW(MutationData::make({1, 1}, parse("1+x/y", 2)));
}

TEST_CASE("exact_divide") {
    auto q = exact_divide(parse("x^2-1", 1), parse("x+1", 1));
    REQUIRE(q.has_value());
    CHECK(*q == parse("x-1", 1));
    CHECK_FALSE(exact_divide(parse("x^2+1", 1), parse("x+1", 1)).has_value());
    auto r = exact_divide(parse("(y+x)^3/(x*y)", 2), parse("x/y+1", 2));
    REQUIRE(r.has_value());
    CHECK(multiply(*r, parse("x/y+1", 2)) == parse("(y+x)^3/(x*y)", 2));
}

TEST_CASE("verify_chain examples") {
    auto step = [](const char* text) { return ChainStep::from_json(nlohmann::json::parse(text), 3, 0); };
    auto f = parse("x+y+z+x/z+y/z+x/(y*z)+y/(x*z)+2/z+2/y+2/x+z/(x*y)", 3);
    auto rep = verify_chain(f,
                            {step(R"({"kind":"coords","images":{"x":"x*z","y":"y*z"}})"),
                             step(R"({"kind":"mutation","w":[0,0,-1],"a":"x+y+1"})")},
                            parse("x+y+z+(x+y+1)^3/(x*y*z)", 3), 10, false);
    CHECK(rep.ok);
    CHECK(rep.final_matches);
    for (const auto& s : rep.steps) CHECK(s.period_preserved == true);

    auto g = parse("x+y+z+1/x", 3);
    CHECK(verify_chain(g, {}, g, 10, false).ok);
    CHECK_FALSE(verify_chain(g, {}, g + LaurentPolynomial::constant(3, 0, 1), 10, false).ok);
    CHECK(verify_chain(g, {}, g + LaurentPolynomial::constant(3, 0, 1), 10, true).ok);

    auto h = parse("(x+y+1)^2*(x+y+z+1)/(x*y*z)+z", 3);
    auto inv2 = invert_mutation(h, MutationData::make({0, 0, -1}, parse("x+y+1", 3)));
    auto start = invert_mutation(inv2, MutationData::make({0, -1, 0}, parse("z+1", 3)));
    auto rep2 = verify_chain(start,
                             {step(R"({"kind":"mutation","w":[0,-1,0],"a":"z+1"})"),
                              step(R"({"kind":"mutation","w":[0,0,-1],"a":"x+y+1"})")},
                             h, 10, false);
    CHECK(rep2.ok);

    auto bad = verify_chain(parse("1/x+y+z", 3), {step(R"({"kind":"mutation","w":[1,0,0],"a":"1+y"})")},
                            parse("x", 3), 4, false);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.steps.size() == 1);
    CHECK_FALSE(bad.steps[0].ok);
}

TEST_CASE("chain step parsing") {
    auto s = ChainStep::from_json(nlohmann::json::parse(R"({"kind":"coords","images":{"y":"x*y"}})"), 3, 0);
    CHECK(s.kind == ChainStep::Kind::Coords);
    CHECK(s.matrix == IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
    auto t = ChainStep::from_json(nlohmann::json::parse(R"({"kind":"subst","assign":{"a1":"1/2"}})"), 3, 2);
    CHECK(t.assign.at(0) == Rational(1, 2));
    CHECK_THROWS(ChainStep::from_json(nlohmann::json::parse(R"({"kind":"coords","matrix":[[2,0],[0,1]]})"), 2, 0));
    CHECK_THROWS(ChainStep::from_json(nlohmann::json::parse(R"({"kind":"flip"})"), 2, 0));
}

TEST_CASE("property: grading completeness") {
    Rng rng(31);
    for (int it = 0; it < 50; ++it) {
        const int n = static_cast<int>(uniform(rng, 1, 3));
        auto f = random_polynomial(rng, n, 8, 2, 3);
        auto w = random_primitive(rng, n);
        LaurentPolynomial sum(n, 0);
        for (const auto& [k, piece] : grade_by_weight(f, w)) {
            for (const auto& e : piece.support()) CHECK(weight(w, e) == k);
            sum = sum + piece;
        }
        CHECK(sum == f);
    }
}

TEST_CASE("property: period invariance and round trip on 100 random mutable instances") {
    Rng rng(32);
    for (int it = 0; it < 100; ++it) {
        auto [f, m] = random_mutable(rng, static_cast<int>(uniform(rng, 2, 3)));
        auto g = mutate(f, m);
        CHECK(invert_mutation(g, m) == f);
        CHECK(period_coefficients(f, 8) == period_coefficients(g, 8));
    }
}

}  // TEST_SUITE
