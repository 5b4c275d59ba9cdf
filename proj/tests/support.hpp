/*
 * support.hpp
 * -----------
 * Random generators and brute-force oracles shared by the test suites.
 */
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lgforge/laurent.hpp"

namespace lgforge::testing {

using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline IntVec random_vector(Rng& rng, int n, long long lo, long long hi) {
    IntVec v(static_cast<size_t>(n));
    for (auto& x : v) x = uniform(rng, lo, hi);
    return v;
}

// Nonzero rational p/q with |p| <= num_bound and 1 <= q <= den_bound.
inline Rational random_rational(Rng& rng, long long num_bound, long long den_bound) {
    long long p = 0;
    while (p == 0) p = uniform(rng, -num_bound, num_bound);
    Rational q(static_cast<long>(p), static_cast<unsigned long>(uniform(rng, 1, den_bound)));
    q.canonicalize();
    return q;
}

// Up to max_terms monomials with exponents in [-e, e] and nonzero integer
// coefficients in [-c, c]; never the zero polynomial.
inline LaurentPolynomial random_polynomial(Rng& rng, int n, size_t max_terms, long long e,
                                           long long c) {
    std::vector<LaurentPolynomial::Term> terms;
    const size_t count = static_cast<size_t>(uniform(rng, 1, static_cast<long long>(max_terms)));
    while (terms.size() < count) {
        long long coef = 0;
        while (coef == 0) coef = uniform(rng, -c, c);
        terms.emplace_back(exp_from(random_vector(rng, n, -e, e)), Rational(static_cast<long>(coef)));
    }
    auto f = LaurentPolynomial::from_terms(n, 0, terms);
    if (f.is_zero()) return LaurentPolynomial::variable(n, 0, 0);
    return f;
}

// Product of random elementary matrices: determinant +-1, small entries.
inline IntMatrix random_unimodular(Rng& rng, int n, int steps = 6) {
    IntMatrix M(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (int s = 0; s < steps && n > 1; ++s) {
        const auto i = static_cast<size_t>(uniform(rng, 0, n - 1));
        auto j = static_cast<size_t>(uniform(rng, 0, n - 2));
        if (j >= i) ++j;
        const long long k = uniform(rng, -1, 1);
        for (int col = 0; col < n; ++col) M[i][static_cast<size_t>(col)] += k * M[j][static_cast<size_t>(col)];
        if (uniform(rng, 0, 3) == 0) std::swap(M[i], M[j]);
    }
    if (uniform(rng, 0, 1) == 1)
        for (auto& x : M[0]) x = -x;
    return M;
}

inline IntVec mat_vec(const IntMatrix& M, const IntVec& v) {
    IntVec out(M.size(), 0);
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += M[i][j] * v[j];
    return out;
}

// Term-by-term convolution over a plain map, independent of the library kernel.
inline std::map<IntVec, Rational> convolve(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    std::map<IntVec, Rational> out;
    const int n = f.rank() + f.param_rank();
    for (const auto& [ea, ca] : f.terms())
        for (const auto& [eb, cb] : g.terms()) {
            IntVec v(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = ea[i] + eb[i];
            out[v] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

inline std::map<IntVec, Rational> as_map(const LaurentPolynomial& f) {
    std::map<IntVec, Rational> out;
    const int n = f.rank() + f.param_rank();
    for (const auto& [e, c] : f.terms()) {
        IntVec v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = e[i];
        out[v] = c;
    }
    return out;
}

inline Integer factorial(long long d) {
    Integer r = 1;
    for (long long i = 2; i <= d; ++i) r *= static_cast<long>(i);
    return r;
}

// Constant term of (sum_i c_i x^{v_i})^d for distinct exponents v_i by
// enumerating all compositions of d over the monomials.
inline Rational multinomial_constant_term(const std::vector<IntVec>& exps,
                                          const std::vector<Rational>& coefs, int d) {
    const size_t l = exps.size();
    const size_t n = l ? exps[0].size() : 0;
    Rational total = 0;
    std::vector<int> k(l, 0);
    auto rec = [&](auto&& self, size_t i, int left) -> void {
        if (i + 1 == l || l == 0) {
            if (l) k[i] = left;
            else if (left) return;
            IntVec s(n, 0);
            for (size_t a = 0; a < l; ++a)
                for (size_t b = 0; b < n; ++b) s[b] += k[a] * exps[a][b];
            if (std::any_of(s.begin(), s.end(), [](long long x) { return x != 0; })) return;
            Rational term(factorial(d));
            for (size_t a = 0; a < l; ++a) {
                term /= Rational(factorial(k[a]));
                for (int p = 0; p < k[a]; ++p) term *= coefs[a];
            }
            total += term;
            return;
        }
        for (int x = 0; x <= left; ++x) {
            k[i] = x;
            self(self, i + 1, left - x);
        }
    };
    rec(rec, 0, d);
    return total;
}

}  // namespace lgforge::testing
