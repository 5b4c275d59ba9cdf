/*
 * period.hpp
 * ----------
 * Classical and regularized periods of Laurent polynomials.
 *
 * The regularized coefficient of degree d is the constant term c(f^d); the
 * classical coefficient divides it by d!. Coefficients are rank-0 polynomials
 * in the parameters of f (plain rationals when f has no parameters).
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgforge/laurent.hpp"

namespace lgforge {

enum class Flavor { Regularized, Classical };

// Full keeps every term of f^d; Pruned drops terms of f^d that cannot return
// to the zero exponent within the remaining N - d multiplications (tested via
// support functions of the Newton polytope). Both give identical series.
enum class PowerMode { Full, Pruned };

struct PeriodSeries {
    int order = 0;
    Flavor flavor = Flavor::Regularized;
    int param_rank = 0;
    std::vector<LaurentPolynomial> coefficients;  // rank 0, length order + 1

    // Plain rational coefficients; throws if any coefficient involves a parameter.
    std::vector<Rational> rationals() const;
    PeriodSeries converted(Flavor target) const;
    // JSON array of coefficient strings ("p/q" or parameter polynomial text).
    std::string to_json() const;
    bool operator==(const PeriodSeries& o) const = default;
};

PeriodSeries period_coefficients(const LaurentPolynomial& f, int N,
                                 Flavor flavor = Flavor::Regularized,
                                 PowerMode mode = PowerMode::Full);

// True iff the classical period of f + a equals e^{at} times the classical
// period of f through order N.
bool shift_relation_check(const LaurentPolynomial& f, const Rational& a, int N);

// Returns a = c(g) - c(f) when the classical period of g equals e^{at} times the
// classical period of f through order N. Both inputs must be parameter free;
// their ranks may differ.
std::optional<Rational> period_equal_up_to_shift(const LaurentPolynomial& f,
                                                 const LaurentPolynomial& g, int N,
                                                 PowerMode mode = PowerMode::Pruned);

bool period_distinct(const LaurentPolynomial& f, const LaurentPolynomial& g, int N);

// First degree at which the two series disagree (after the best constant shift
// when up_to_shift is set); empty when they agree through order N.
std::optional<int> first_period_mismatch(const LaurentPolynomial& f, const LaurentPolynomial& g,
                                         int N, bool up_to_shift,
                                         PowerMode mode = PowerMode::Pruned);

// Termwise product e^{at} * P for a classical series P.
PeriodSeries exp_shift(const PeriodSeries& classical, const Rational& a);

}  // namespace lgforge
