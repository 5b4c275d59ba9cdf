/*
 * period.cpp
 * ----------
 * Incremental powering kernel for constant terms of f^d.
 *
 * The kernel clears denominators once (f = g / L with g integral), powers g
 * with GMP integers in a hash map and divides the constant terms by L^d.
 */
#include "lgforge/period.hpp"

#include <numeric>
#include <unordered_map>

#include "lgforge/errors.hpp"

namespace lgforge {

namespace {

struct IntTerm {
    Exp e;
    Integer c;
};

// Primitive integer directions used as support-function tests when pruning.
std::vector<IntVec> pruning_directions(int n) {
    int bound = n <= 3 ? 2 : 1;
    std::vector<IntVec> dirs;
    IntVec v(static_cast<size_t>(n), -bound);
    while (true) {
        long long g = 0;
        for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
        if (g == 1) dirs.push_back(v);
        size_t i = 0;
        while (i < v.size() && v[i] == bound) v[i++] = -bound;
        if (i == v.size()) break;
        ++v[i];
    }
    return dirs;
}

long long dot(const IntVec& u, const Exp& e) {
    long long s = 0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * e[static_cast<int>(i)];
    return s;
}

}  // namespace

std::vector<Rational> PeriodSeries::rationals() const {
    std::vector<Rational> out;
    for (const auto& c : coefficients) out.push_back(c.rational_value());
    return out;
}

PeriodSeries PeriodSeries::converted(Flavor target) const {
    if (target == flavor) return *this;
    PeriodSeries out = *this;
    out.flavor = target;
    Integer fact = 1;
    for (size_t d = 0; d < coefficients.size(); ++d) {
        if (d > 0) fact *= static_cast<unsigned long>(d);
        Rational s = target == Flavor::Classical ? Rational(1, 1) / Rational(fact) : Rational(fact);
        out.coefficients[d] = coefficients[d].scaled(s);
    }
    return out;
}

std::string PeriodSeries::to_json() const {
    std::string out = "[";
    for (size_t i = 0; i < coefficients.size(); ++i) {
        if (i) out += ",";
        out += "\"" + render(coefficients[i]) + "\"";
    }
    return out + "]";
}

PeriodSeries period_coefficients(const LaurentPolynomial& f, int N, Flavor flavor,
                                 PowerMode mode) {
    if (N < 0) throw DomainError("period order must be nonnegative");
    const int n = f.rank(), r = f.param_rank();
    PeriodSeries out;
    out.order = N;
    out.flavor = Flavor::Regularized;
    out.param_rank = r;
    out.coefficients.push_back(LaurentPolynomial::constant(0, r, 1));

    Integer L = 1;
    for (const auto& t : f.terms()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t.second.get_den_mpz_t());
    std::vector<IntTerm> base;
    for (const auto& [e, c] : f.terms()) base.push_back({e, c.get_num() * (L / c.get_den())});

    std::vector<IntVec> dirs;
    std::vector<long long> support_fn;
    if (mode == PowerMode::Pruned && !base.empty()) {
        dirs = pruning_directions(n);
        for (const auto& u : dirs) {
            long long h = dot(u, base[0].e);
            for (const auto& t : base) h = std::max(h, dot(u, t.e));
            support_fn.push_back(h);
        }
    }
    auto reachable = [&](const Exp& e, long long remaining) {
        for (size_t k = 0; k < dirs.size(); ++k)
            if (-dot(dirs[k], e) > remaining * support_fn[k]) return false;
        return true;
    };

    std::vector<IntTerm> cur{{Exp{}, Integer(1)}};
    Integer Lpow = 1;
    for (int d = 1; d <= N; ++d) {
        Lpow *= L;
        std::unordered_map<Exp, Integer, ExpHash> acc;
        acc.reserve(cur.size() * 2 + 16);
        for (const auto& a : cur)
            for (const auto& b : base) {
                Integer& slot = acc[a.e + b.e];
                mpz_addmul(slot.get_mpz_t(), a.c.get_mpz_t(), b.c.get_mpz_t());
            }
        std::vector<LaurentPolynomial::Term> ct;
        std::vector<IntTerm> next;
        next.reserve(acc.size());
        for (auto& [e, c] : acc) {
            if (c == 0) continue;
            if (e.is_zero_in(0, n)) {
                Exp params;
                for (int j = 0; j < r; ++j) params[j] = e[n + j];
                ct.emplace_back(params, Rational(c, Lpow));
            }
            if (d < N && (dirs.empty() || reachable(e, N - d))) next.push_back({e, std::move(c)});
        }
        for (auto& t : ct) t.second.canonicalize();
        out.coefficients.push_back(LaurentPolynomial::from_terms(0, r, std::move(ct)));
        cur = std::move(next);
    }
    return flavor == Flavor::Regularized ? out : out.converted(flavor);
}

PeriodSeries exp_shift(const PeriodSeries& classical, const Rational& a) {
    if (classical.flavor != Flavor::Classical) throw DomainError("exp_shift expects a classical series");
    PeriodSeries out = classical;
    int N = classical.order;
    std::vector<Rational> ek(static_cast<size_t>(N) + 1);
    ek[0] = 1;
    for (int k = 1; k <= N; ++k) ek[static_cast<size_t>(k)] = ek[static_cast<size_t>(k) - 1] * a / k;
    for (int d = 0; d <= N; ++d) {
        LaurentPolynomial s(0, classical.param_rank);
        for (int k = 0; k <= d; ++k)
            s = s + classical.coefficients[static_cast<size_t>(d - k)].scaled(ek[static_cast<size_t>(k)]);
        out.coefficients[static_cast<size_t>(d)] = s;
    }
    return out;
}

bool shift_relation_check(const LaurentPolynomial& f, const Rational& a, int N) {
    LaurentPolynomial shifted = f + LaurentPolynomial::constant(f.rank(), f.param_rank(), a);
    PeriodSeries lhs = period_coefficients(shifted, N, Flavor::Classical);
    PeriodSeries rhs = exp_shift(period_coefficients(f, N, Flavor::Classical), a);
    return lhs.coefficients == rhs.coefficients;
}

namespace {

void require_parameter_free(const LaurentPolynomial& f) {
    if (f.param_rank() != 0 && !f.is_rational())
        throw DomainError("period comparison up to shift needs parameter-free polynomials");
}

}  // namespace

std::optional<int> first_period_mismatch(const LaurentPolynomial& f, const LaurentPolynomial& g,
                                         int N, bool up_to_shift, PowerMode mode) {
    PeriodSeries pf = period_coefficients(f, N, Flavor::Classical, mode);
    PeriodSeries pg = period_coefficients(g, N, Flavor::Classical, mode);
    if (up_to_shift) {
        require_parameter_free(f);
        require_parameter_free(g);
        pf.param_rank = pg.param_rank = 0;
        for (auto& c : pf.coefficients) c = LaurentPolynomial::constant(0, 0, c.rational_value());
        for (auto& c : pg.coefficients) c = LaurentPolynomial::constant(0, 0, c.rational_value());
        Rational a = constant_term(g).rational_value() - constant_term(f).rational_value();
        pf = exp_shift(pf, a);
    }
    for (int d = 0; d <= N; ++d) {
        const auto& x = pf.coefficients[static_cast<size_t>(d)];
        const auto& y = pg.coefficients[static_cast<size_t>(d)];
        if (!(x.param_rank() == y.param_rank() && x == y)) return d;
    }
    return std::nullopt;
}

std::optional<Rational> period_equal_up_to_shift(const LaurentPolynomial& f,
                                                 const LaurentPolynomial& g, int N,
                                                 PowerMode mode) {
    require_parameter_free(f);
    require_parameter_free(g);
    if (first_period_mismatch(f, g, N, true, mode)) return std::nullopt;
    return constant_term(g).rational_value() - constant_term(f).rational_value();
}

bool period_distinct(const LaurentPolynomial& f, const LaurentPolynomial& g, int N) {
    return !period_equal_up_to_shift(f, g, N).has_value();
}

}  // namespace lgforge
