/*
 * laurent.hpp
 * -----------
 * Exact multivariate Laurent polynomials over the rationals, optionally with
 * coefficients that are themselves (Laurent) polynomials in formal parameters.
 *
 * A polynomial of rank n with r parameters is stored as a sparse map from
 * combined exponent vectors (x_1..x_n, a_1..a_r) to nonzero rationals. The
 * coefficient of a torus monomial x^v is the rank-0 polynomial collecting all
 * stored terms whose first n exponents equal v.
 *
 * Terms are kept sorted in graded-lex descending order on the torus part,
 * then graded-lex descending on the parameter part, which fixes rendering.
 *
 * Example: "x + y + a1/(x*y)" with n = 2, r = 1 is stored as
 *   { (1,0 | 0): 1, (0,1 | 0): 1, (-1,-1 | 1): 1 }
 */
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lgforge {

using Rational = mpq_class;
using Integer = mpz_class;
using IntVec = std::vector<long long>;
using IntMatrix = std::vector<IntVec>;

// Capacity for torus variables plus parameters of one polynomial.
constexpr int kMaxVars = 16;

struct Exp {
    std::array<int32_t, kMaxVars> e{};

    int32_t& operator[](int i) { return e[static_cast<size_t>(i)]; }
    int32_t operator[](int i) const { return e[static_cast<size_t>(i)]; }
    bool operator==(const Exp&) const = default;

    // Componentwise sum with overflow detection.
    Exp operator+(const Exp& o) const;
    Exp operator-() const;
    bool is_zero_in(int begin, int end) const;
};

struct ExpHash {
    size_t operator()(const Exp& x) const noexcept;
};

// Graded-lex descending order on the first n entries, then on entries n..n+r.
struct GradedLexDesc {
    int n = 0;
    int r = 0;
    bool operator()(const Exp& a, const Exp& b) const;
};

class LaurentPolynomial {
public:
    using Term = std::pair<Exp, Rational>;

    LaurentPolynomial() = default;
    LaurentPolynomial(int rank, int param_rank);

    static LaurentPolynomial constant(int rank, int param_rank, const Rational& c);
    static LaurentPolynomial monomial(int rank, int param_rank, const Exp& e,
                                      const Rational& c = 1);
    static LaurentPolynomial variable(int rank, int param_rank, int index);
    static LaurentPolynomial parameter(int rank, int param_rank, int index);
    // Sums duplicate exponents, drops zeros and sorts.
    static LaurentPolynomial from_terms(int rank, int param_rank, std::vector<Term> terms);

    int rank() const { return rank_; }
    int param_rank() const { return param_rank_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    // Distinct torus exponents paired with their parameter coefficients (rank 0).
    std::vector<std::pair<Exp, LaurentPolynomial>> grouped() const;
    LaurentPolynomial coefficient(const Exp& torus_exp) const;
    std::vector<Exp> support() const;
    // True when every term has zero torus exponent.
    bool is_constant() const;
    // True when no term carries a parameter exponent.
    bool is_rational() const;
    // Value of a constant, parameter-free polynomial; throws otherwise.
    Rational rational_value() const;
    // Single-term test in the combined exponent space.
    bool is_monomial() const { return terms_.size() == 1; }

    LaurentPolynomial operator-() const;
    LaurentPolynomial scaled(const Rational& c) const;
    LaurentPolynomial shifted(const Exp& e) const;  // multiply by x^e (combined space)
    // Same terms viewed in a different rank/param_rank layout (entries must fit).
    LaurentPolynomial with_layout(int rank, int param_rank) const;

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);
    friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
    friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b);
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);

    std::string to_string() const;

private:
    int rank_ = 0;
    int param_rank_ = 0;
    std::vector<Term> terms_;
};

struct NewtonPolytopeData {
    int rank = 0;
    std::vector<IntVec> vertices;  // sorted lexicographically ascending
    int dimension = 0;
};

// Expression grammar: expr := term (('+'|'-') term)*, term := factor (('*'|'/') factor)*,
// factor := base ('^' integer)?, base := rational | variable | parameter | '(' expr ')'.
LaurentPolynomial parse(const std::string& text, int rank, int param_rank = 0);

std::string render(const LaurentPolynomial& f);
// Juxtaposition style without '*' ("xy+1/(xyz)"); display only, since the
// parser requires explicit multiplication.
std::string render_compact(const LaurentPolynomial& f);
std::string render_rational(const Rational& q);
// Torus variable names used for rank n: x,y,z,w when n <= 4, else x1..xn.
std::string variable_name(int index, int rank);
std::string parameter_name(int index, int param_rank);
// Inverse of parameter_name; throws DomainError for unknown names.
int parameter_index(const std::string& name, int param_rank);

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial power(const LaurentPolynomial& f, unsigned d);
// Parameter polynomial (rank 0) sitting at the zero torus exponent.
LaurentPolynomial constant_term(const LaurentPolynomial& f);
// Substitutes x^v -> x^{Mv}; M must be unimodular.
LaurentPolynomial apply_monomial_map(const LaurentPolynomial& f, const IntMatrix& M);
NewtonPolytopeData newton_polytope(const LaurentPolynomial& f);
NewtonPolytopeData convex_hull_vertices(int rank, const std::vector<IntVec>& points);
// Replaces parameter i (0-based) by values[i]; remaining parameters are re-indexed.
LaurentPolynomial substitute_parameters(const LaurentPolynomial& f,
                                        const std::map<int, Rational>& values);

inline std::ostream& operator<<(std::ostream& os, const LaurentPolynomial& f) {
    return os << f.to_string();
}

IntVec torus_part(const Exp& e, int rank);
Exp exp_from(const IntVec& v);
long long determinant(const IntMatrix& M);

}  // namespace lgforge
