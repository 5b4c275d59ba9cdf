/*
 * degeneration.hpp
 * ----------------
 * Degenerations of Landau-Ginzburg models: coefficient limits of parametrized
 * models and the minimal/maximal degenerations of a toric model in the
 * direction of an effective torus-invariant divisor.
 *
 * For D = sum d_i D_i the section polytope is P_D = {m : <m,v_i> >= -d_i}.
 * Over P_D each ray gets the interval of h_i(m) = d_i + <m,v_i>; the minimal
 * degeneration keeps rays whose minimum is 0 and the maximal degeneration
 * keeps rays whose maximum is 0.
 */
#pragma once

#include <set>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lgforge/laurent.hpp"
#include "lgforge/toric.hpp"

namespace lgforge {

struct DivisorOnFan {
    FanData fan;
    std::vector<Rational> d;

    // Validates the fan and the length of d, and checks that P_D is nonempty.
    static DivisorOnFan make(FanData fan, std::vector<Rational> d);
};

struct DegenerationResult {
    std::vector<size_t> f_min_support;
    std::vector<size_t> f_max_support;
    std::vector<std::pair<Rational, Rational>> intervals;  // [min_i, max_i] per ray
    std::vector<std::vector<Rational>> vertices;           // vertices of P_D, lex ascending

    nlohmann::json to_json() const;
};

// Throws DomainError when P_D is empty or unbounded.
DegenerationResult direction_degeneration(const DivisorOnFan& D);

// Sets every parameter in `dying` (0-based) to zero; remaining parameters are re-indexed.
LaurentPolynomial parameter_limit(const LaurentPolynomial& f, const std::set<int>& dying);

// Keeps only the terms whose torus exponent lies in `keep`, which must be part of the support.
LaurentPolynomial restrict_model(const LaurentPolynomial& f, const std::vector<IntVec>& keep);

// Hori-Vafa model of the fan restricted to the given ray indices.
LaurentPolynomial ray_model(const FanData& fan, const std::vector<size_t>& rays);

// Parses "1,0,2/3" into rationals.
std::vector<Rational> parse_rational_list(const std::string& text);

}  // namespace lgforge
