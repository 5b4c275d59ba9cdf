/*
 * toric.hpp
 * ---------
 * Fans of toric varieties and the combinatorial quantum-period formulas:
 * class groups, relation monoids, Hori-Vafa and toric-pair models, nef
 * partitions, fibre fans, weighted projective planes and Markov triples.
 *
 * Conventions: rays v_1..v_l span Z^n over Q. A relation is k in Z^l with
 * sum k_i v_i = 0. The class group basis is given by r ray divisors D_s
 * (s in basis_rays) whose classes form a Z-basis; parameter a_j attaches to
 * the j-th basis ray and a relation k has parameter degree (k_s)_s.
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lgforge/laurent.hpp"
#include "lgforge/period.hpp"

namespace lgforge {

struct FanData {
    int rank = 0;
    std::vector<IntVec> rays;
    std::vector<std::vector<size_t>> cones;  // optional maximal cones (ray indices)
    std::optional<std::vector<size_t>> basis_rays;  // optional pinned class-group basis

    // Checks primitivity, distinctness and spanning; throws DomainError.
    void validate() const;
    static FanData from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct ClassGroupData {
    int class_rank = 0;
    std::vector<IntVec> class_map;          // l rows, r columns: class of D_i
    std::vector<IntVec> relation_basis;     // l - n vectors of Z^l
    std::vector<size_t> basis_rays;         // r ray indices whose classes form the basis
    bool nonnegative = false;               // all class_map entries >= 0
};

ClassGroupData class_group(const FanData& fan);

// All k >= 0 with sum k_i v_i = 0 and sum k_i <= B, in lexicographic order.
std::vector<IntVec> relation_monoid(const FanData& fan, int B);

LaurentPolynomial hori_vafa(const FanData& fan);
// Sum of a^{deg} x^{v_i} where ray s_j of the basis carries parameter a_{j+1}.
LaurentPolynomial toric_pair_model(const FanData& fan, const ClassGroupData& cg);
PeriodSeries toric_quantum_period(const FanData& fan, const ClassGroupData& cg, int N);

struct NefPartition {
    std::vector<std::vector<size_t>> blocks;  // blocks[0] is S_0
};
PeriodSeries ci_quantum_period(const FanData& fan, const ClassGroupData& cg,
                               const NefPartition& part, int N);

// Rays (and cones) of the fan mapping to 0 under the projection, written in the
// Hermite-normal-form basis of the projection kernel.
FanData fibre_fan(const FanData& fan, const IntMatrix& projection);

// Vertices v_0, v_1, v_2 (in weight order) with sum w_i v_i = 0, as the
// Hermite normal form of the 2x3 matrix with columns v_i.
NewtonPolytopeData wpp_fan_polytope(long long w0, long long w1, long long w2);
// Canonical GL(2,Z) representative of an unordered set of plane vectors (sorted).
std::vector<IntVec> gl2_normal_form(const std::vector<IntVec>& vectors);

using MarkovTriple = std::array<Integer, 3>;
bool is_markov(const MarkovTriple& t);
MarkovTriple markov_mutate(const MarkovTriple& t, int slot);
// Distinct triples (entries sorted ascending) reachable from (1,1,1) by at most
// `depth` single-slot mutations, in lexicographic order.
std::vector<MarkovTriple> markov_tree(int depth);

// Frequently used fans.
namespace fans {
FanData projective_space(int n);
FanData product(const FanData& a, const FanData& b);
}  // namespace fans

}  // namespace lgforge
