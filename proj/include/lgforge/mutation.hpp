/*
 * mutation.hpp
 * ------------
 * Mutations x^v -> x^v a^{w(v)} of Laurent polynomials, their inverses and
 * the execution of mutation chains interleaved with coordinate changes and
 * parameter substitutions.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lgforge/laurent.hpp"
#include "lgforge/period.hpp"

namespace lgforge {

struct MutationData {
    IntVec w;
    LaurentPolynomial a;

    // Validates primitivity of w and that supp(a) lies in the kernel of w.
    static MutationData make(IntVec w, LaurentPolynomial a);
};

long long weight(const IntVec& w, const Exp& e);

// Pieces f_k with w(v) = k for every exponent v of f_k; zero pieces omitted.
std::map<long long, LaurentPolynomial> grade_by_weight(const LaurentPolynomial& f, const IntVec& w);

// Exact quotient p / d in the Laurent ring, or empty when d does not divide p.
std::optional<LaurentPolynomial> exact_divide(const LaurentPolynomial& p, const LaurentPolynomial& d);

// Throws NotMutable carrying the first offending grade.
LaurentPolynomial mutate(const LaurentPolynomial& f, const MutationData& m);
LaurentPolynomial invert_mutation(const LaurentPolynomial& g, const MutationData& m);

struct ChainStep {
    enum class Kind { Mutation, Coords, Subst };
    Kind kind = Kind::Mutation;
    std::optional<MutationData> mutation;
    IntMatrix matrix;
    std::map<int, Rational> assign;

    static ChainStep from_json(const nlohmann::json& j, int rank, int param_rank);
    nlohmann::json to_json() const;
    std::string kind_name() const;
};

struct StepReport {
    size_t index = 0;
    std::string kind;
    bool ok = false;
    // Set for mutation and coords steps: regularized periods agree to the order.
    std::optional<bool> period_preserved;
    std::string message;
    std::optional<LaurentPolynomial> result;
};

struct ChainReport {
    bool ok = false;
    std::vector<StepReport> steps;
    std::optional<LaurentPolynomial> final_value;
    bool final_matches = false;
    // Constant c with final = expected + c when the comparison allows constants.
    std::optional<Rational> constant_difference;
    std::string message;
};

// Runs every step, checks period preservation of mutation and coordinate
// steps to order N and compares the final value with expected (exactly, or up
// to an additive constant when modulo_constant is set).
ChainReport verify_chain(const LaurentPolynomial& start, const std::vector<ChainStep>& steps,
                         const LaurentPolynomial& expected, int N, bool modulo_constant,
                         PowerMode mode = PowerMode::Pruned);

}  // namespace lgforge
