/*
 * test_toric.cpp
 * --------------
 * Class groups, relation monoids, toric models, the quantum-period oracles,
 * fibre fans, weighted projective planes and Markov triples.
 */
#include "doctest.h"

#include <set>

#include "lgforge/errors.hpp"
#include "lgforge/toric.hpp"
#include "support.hpp"

using namespace lgforge;
using namespace lgforge::testing;

namespace {

FanData fan(int rank, std::vector<IntVec> rays) {
    FanData f;
    f.rank = rank;
    f.rays = std::move(rays);
    return f;
}

FanData blow_up_p3() { return fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {-1, 0, 0}}); }

// The six fans of the oracle-equivalence suite.
std::vector<std::pair<std::string, FanData>> oracle_fans() {
    const auto p1 = fans::projective_space(1);
    const auto p2 = fans::projective_space(2);
    return {{"P1", p1},
            {"P2", p2},
            {"P3", fans::projective_space(3)},
            {"P1xP1", fans::product(p1, p1)},
            {"P1xP2", fans::product(p1, p2)},
            {"Bl_pP3", blow_up_p3()}};
}

// Sum over a of c(f_1^a * f_0^d), the constant-term side of the
// complete-intersection identity, for a single extra block.
Rational restricted_constant_term(const LaurentPolynomial& f0, const LaurentPolynomial& f1, unsigned d,
                                  unsigned a_max) {
    Rational total = 0;
    auto f0d = power(f0, d);
    auto f1a = LaurentPolynomial::constant(f0.rank(), 0, 1);
    for (unsigned a = 0; a <= a_max; ++a) {
        total += constant_term(multiply(f1a, f0d)).rational_value();
        f1a = multiply(f1a, f1);
    }
    return total;
}

MarkovTriple triple(long a, long b, long c) { return {Integer(a), Integer(b), Integer(c)}; }

}  // namespace

TEST_SUITE("toric") {

TEST_CASE("class_group examples") {
    auto p2 = class_group(fans::projective_space(2));
    CHECK(p2.class_rank == 1);
    CHECK(p2.class_map == std::vector<IntVec>{{1}, {1}, {1}});
    auto p1 = class_group(fans::projective_space(1));
    CHECK(p1.class_map == std::vector<IntVec>{{1}, {1}});
    auto bl = class_group(fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {-1, 0, 0}, {0, -1, 0}}));
    CHECK(bl.class_rank == 3);
    CHECK(bl.relation_basis.size() == 3);
}

TEST_CASE("class_group kills principal divisors") {
    for (const auto& [name, f] : oracle_fans()) {
        CAPTURE(name);
        auto cg = class_group(f);
        CHECK(cg.class_rank == static_cast<int>(f.rays.size()) - f.rank);
        for (int m = 0; m < f.rank; ++m) {
            IntVec image(static_cast<size_t>(cg.class_rank), 0);
            for (size_t i = 0; i < f.rays.size(); ++i)
                for (size_t j = 0; j < image.size(); ++j)
                    image[j] += f.rays[i][static_cast<size_t>(m)] * cg.class_map[i][j];
            CHECK(std::all_of(image.begin(), image.end(), [](long long x) { return x == 0; }));
        }
    }
}

TEST_CASE("FanData validation") {
    CHECK_THROWS_AS(fan(2, {{2, 0}, {0, 1}, {-1, -1}}).validate(), DomainError);
    CHECK_THROWS_AS(fan(2, {{1, 0}, {1, 0}, {-1, -1}}).validate(), DomainError);
    CHECK_THROWS_AS(fan(2, {{1, 0}, {-1, 0}}).validate(), DomainError);
    CHECK_THROWS_AS(class_group(fan(2, {{2, -1}, {-1, 2}, {-1, -1}})), DomainError);  // torsion Z/3
}

TEST_CASE("relation_monoid examples") {
    CHECK(relation_monoid(fans::projective_space(2), 6) == std::vector<IntVec>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
    auto p1p1 = fan(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    CHECK(relation_monoid(p1p1, 2) == std::vector<IntVec>{{0, 0, 0, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}});
    CHECK(relation_monoid(blow_up_p3(), 0) == std::vector<IntVec>{{0, 0, 0, 0, 0}});
}

TEST_CASE("relation_monoid is closed under addition within the bound") {
    auto f = blow_up_p3();
    auto rel = relation_monoid(f, 8);
    std::set<IntVec> s(rel.begin(), rel.end());
    for (const auto& a : rel)
        for (const auto& b : rel) {
            IntVec c(a.size());
            long long total = 0;
            for (size_t i = 0; i < a.size(); ++i) total += (c[i] = a[i] + b[i]);
            if (total <= 8) CHECK(s.count(c) == 1);
        }
}

TEST_CASE("hori_vafa and toric_pair_model examples") {
    CHECK(hori_vafa(fans::projective_space(2)) == parse("x+y+1/(x*y)", 2));
    CHECK(hori_vafa(fans::projective_space(3)) == parse("x+y+z+1/(x*y*z)", 3));
    CHECK(hori_vafa(fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}})) == parse("x+y+1/x+1/y", 2));

    auto p1 = fans::projective_space(1);
    auto m1 = toric_pair_model(p1, class_group(p1));
    CHECK(m1.param_rank() == 1);
    CHECK(m1.size() == 2);
    CHECK(substitute_parameters(m1, {{0, 1}}) == parse("x+1/x", 1));

    auto p2 = fans::projective_space(2);
    auto m2 = toric_pair_model(p2, class_group(p2));
    CHECK(substitute_parameters(m2, {{0, 1}}) == hori_vafa(p2));
    int with_param = 0;
    for (const auto& [e, c] : m2.terms()) with_param += e[2] != 0;
    CHECK(with_param == 1);

    auto bl = blow_up_p3();
    auto mb = toric_pair_model(bl, class_group(bl));
    CHECK(substitute_parameters(mb, {{0, 1}, {1, 1}}) == parse("x+y+z+1/x+1/(x*y*z)", 3));
}

TEST_CASE("toric_quantum_period examples") {
    auto p2 = fans::projective_space(2);
    auto s = toric_quantum_period(p2, class_group(p2), 6);
    CHECK(s.coefficients[3] == parse("6*a1", 0, 1));
    CHECK(s.coefficients[6] == parse("90*a1^2", 0, 1));
    auto p3 = fans::projective_space(3);
    CHECK(toric_quantum_period(p3, class_group(p3), 4).coefficients[4] == parse("24*a1", 0, 1));
    auto zero = toric_quantum_period(p3, class_group(p3), 0);
    CHECK(zero.coefficients.size() == 1);
    CHECK(zero.coefficients[0] == LaurentPolynomial::constant(0, 1, 1));
}

TEST_CASE("oracle equivalence: pair model period equals the quantum period to order 8") {
    for (const auto& [name, f] : oracle_fans()) {
        CAPTURE(name);
        auto cg = class_group(f);
        CHECK(period_coefficients(toric_pair_model(f, cg), 8) == toric_quantum_period(f, cg, 8));
    }
}

TEST_CASE("ci_quantum_period: cubic threefold") {
    auto p4 = fans::projective_space(4);
    auto cg = class_group(p4);
    auto s = ci_quantum_period(p4, cg, NefPartition{{{0, 1}, {2, 3, 4}}}, 8);
    auto at_one = [&](size_t d) { return substitute_parameters(s.coefficients[d], {{0, 1}}).rational_value(); };
    CHECK(at_one(0) == 1);
    CHECK(at_one(1) == 0);
    CHECK(at_one(2) == 12);
    auto model = period_coefficients(parse("(x+y+1)^3/(x*y*z)+z", 3), 8).rationals();
    for (size_t d = 0; d <= 8; ++d) CHECK(at_one(d) == model[d]);
    CHECK(ci_quantum_period(p4, cg, NefPartition{{{0, 1}, {2, 3, 4}}}, 0).coefficients.size() == 1);
}

TEST_CASE("ci_quantum_period rejects malformed partitions") {
    auto p4 = fans::projective_space(4);
    auto cg = class_group(p4);
    CHECK_THROWS_AS(ci_quantum_period(p4, cg, NefPartition{{{}, {0, 1, 2, 3, 4}}}, 4), DomainError);
    CHECK_THROWS_AS(ci_quantum_period(p4, cg, NefPartition{{{0, 1}, {1, 2, 3, 4}}}, 4), DomainError);
    CHECK_THROWS_AS(ci_quantum_period(p4, cg, NefPartition{{{0, 1}, {2, 3}}}, 4), DomainError);
    CHECK_THROWS_AS(ci_quantum_period(p4, cg, NefPartition{{{0, 1, 2, 3, 4}}}, 4), DomainError);
}

TEST_CASE("ci_quantum_period agrees with restricted constant terms for the cubic threefold") {
    // f_0 = x_1 + x_2 and f_1 = x_3 + x_4 + 1/(x_1 x_2 x_3 x_4) on the P4 torus.
    auto f0 = parse("x+y", 4);
    auto f1 = parse("z+w+1/(x*y*z*w)", 4);
    auto p4 = fans::projective_space(4);
    auto s = ci_quantum_period(p4, class_group(p4), NefPartition{{{0, 1}, {2, 3, 4}}}, 4);
    for (unsigned d = 0; d <= 4; ++d) {
        CAPTURE(d);
        // With k factors 1/(xyzw), the x and y exponents sum to d - 2k and the z, w
        // exponents force a = 3k, so a = 3d/2 is the only contributing power;
        // raising the bound must not change the sum.
        const unsigned bound = (3 * d) / 2;
        const auto value = restricted_constant_term(f0, f1, d, bound);
        CHECK(value == restricted_constant_term(f0, f1, d, 2 * bound + 2));
        CHECK(value == substitute_parameters(s.coefficients[d], {{0, 1}}).rational_value());
    }
}

TEST_CASE("fibre_fan examples") {
    auto p1 = fans::projective_space(1);
    auto p2 = fans::projective_space(2);
    auto p1p2 = fans::product(p1, p2);
    auto fib = fibre_fan(p1p2, {{1, 0, 0}});
    CHECK(fib.rank == 2);
    CHECK(fib.rays.size() == 3);
    CHECK(hori_vafa(fib) == parse("x+y+1/(x*y)", 2));
    CHECK(fibre_fan(p2, {{1, 0}, {0, 1}}).rays.empty());
    auto fp1 = fibre_fan(fans::product(p1, p1), {{1, 0}});
    CHECK(fp1.rays.size() == 2);
    CHECK(hori_vafa(fp1) == parse("x+1/x", 1));
    CHECK_THROWS_AS(fibre_fan(p2, {{2, 0}}), DomainError);
}

TEST_CASE("property: fibre rays are exactly the rays in the projection kernel") {
    auto bl = fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {-1, 0, 0}, {0, -1, 0}});
    for (const IntMatrix& proj : {IntMatrix{{1, 0, 0}}, IntMatrix{{0, 1, 0}}, IntMatrix{{1, 0, 0}, {0, 1, 0}},
                                  IntMatrix{{1, -1, 0}}}) {
        size_t kernel = 0;
        for (const auto& v : bl.rays)
            kernel += std::all_of(proj.begin(), proj.end(), [&](const IntVec& row) {
                long long s = 0;
                for (size_t j = 0; j < v.size(); ++j) s += row[j] * v[j];
                return s == 0;
            });
        CHECK(fibre_fan(bl, proj).rays.size() == kernel);
    }
}

TEST_CASE("wpp_fan_polytope examples") {
    auto p2 = wpp_fan_polytope(1, 1, 1);
    CHECK(gl2_normal_form(p2.vertices) == gl2_normal_form({{1, 0}, {0, 1}, {-1, -1}}));
    auto p112 = wpp_fan_polytope(1, 1, 2);
    CHECK(gl2_normal_form(p112.vertices) == gl2_normal_form({{1, 0}, {-1, 2}, {0, -1}}));
    auto p114 = wpp_fan_polytope(1, 1, 4);
    CHECK(p114.vertices.size() == 3);
    CHECK_THROWS_AS(wpp_fan_polytope(2, 2, 1), DomainError);
    CHECK_THROWS_AS(wpp_fan_polytope(0, 1, 1), DomainError);
}

TEST_CASE("property: wpp vertices are primitive and balanced for 50 random weights") {
    Rng rng(41);
    int done = 0;
    while (done < 50) {
        const long long w[3] = {uniform(rng, 1, 30), uniform(rng, 1, 30), uniform(rng, 1, 30)};
        if (std::gcd(w[0], w[1]) != 1 || std::gcd(w[0], w[2]) != 1 || std::gcd(w[1], w[2]) != 1) continue;
        ++done;
        auto poly = wpp_fan_polytope(w[0], w[1], w[2]);
        REQUIRE(poly.vertices.size() == 3);
        IntVec sum(2, 0);
        for (size_t i = 0; i < 3; ++i) {
            const auto& v = poly.vertices[i];
            CHECK(std::gcd(v[0], v[1]) == 1);
            sum[0] += w[i] * v[0];
            sum[1] += w[i] * v[1];
        }
        CHECK(sum == IntVec{0, 0});
        // The normal form is invariant under unimodular changes of basis.
        auto M = random_unimodular(rng, 2);
        std::vector<IntVec> moved;
        for (const auto& v : poly.vertices) moved.push_back(mat_vec(M, v));
        CHECK(gl2_normal_form(moved) == gl2_normal_form(poly.vertices));
    }
}

TEST_CASE("markov examples") {
    CHECK(markov_mutate(triple(1, 1, 1), 2) == triple(1, 1, 2));
    CHECK(markov_mutate(triple(1, 1, 2), 1) == triple(1, 5, 2));
    CHECK(markov_mutate(markov_mutate(triple(1, 2, 5), 2), 2) == triple(1, 2, 5));
    CHECK_THROWS_AS(markov_mutate(triple(1, 2, 3), 0), DomainError);
    CHECK(is_markov(triple(2, 5, 29)));
    CHECK_FALSE(is_markov(triple(2, 5, 30)));
}

TEST_CASE("property: the Markov tree to depth 8 satisfies the equation") {
    auto tree = markov_tree(8);
    CHECK(tree.front() == triple(1, 1, 1));
    CHECK(tree.size() == 1 + 1 + 1 + 2 + 4 + 8 + 16 + 32 + 64);
    for (const auto& t : tree) {
        CHECK(is_markov(t));
        for (int s = 0; s < 3; ++s) CHECK(markov_mutate(markov_mutate(t, s), s) == t);
    }
}

}  // TEST_SUITE
