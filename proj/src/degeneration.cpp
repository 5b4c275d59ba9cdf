/*
 * degeneration.cpp
 * ----------------
 * Exact vertex enumeration of section polytopes by intersecting every
 * n-subset of the defining hyperplanes, plus coefficient limits.
 */
#include "lgforge/degeneration.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "lgforge/errors.hpp"

namespace lgforge {

namespace {

using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(RMat& A, size_t cols) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < A.size(); ++c) {
        size_t p = r;
        while (p < A.size() && A[p][c] == 0) ++p;
        if (p == A.size()) continue;
        std::swap(A[p], A[r]);
        Rational inv = 1 / A[r][c];
        for (auto& x : A[r]) x *= inv;
        for (size_t i = 0; i < A.size(); ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (size_t j = 0; j < A[i].size(); ++j) A[i][j] -= f * A[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Unique solution of the square system, if any.
std::optional<RVec> solve(RMat A, size_t n) {
    std::vector<size_t> piv = rref(A, n);
    if (piv.size() != n) return std::nullopt;
    RVec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = A[i][n];
    return x;
}

// A spanning vector of the kernel when it is one-dimensional.
std::optional<RVec> kernel_line(RMat A, size_t n) {
    std::vector<size_t> piv = A.empty() ? std::vector<size_t>{} : rref(A, n);
    if (piv.size() + 1 != n) return std::nullopt;
    size_t free_col = 0;
    while (std::find(piv.begin(), piv.end(), free_col) != piv.end()) ++free_col;
    RVec u(n, 0);
    u[free_col] = 1;
    for (size_t i = 0; i < piv.size(); ++i) u[piv[i]] = -A[i][free_col];
    return u;
}

Rational pairing(const RVec& m, const IntVec& v) {
    Rational s = 0;
    for (size_t j = 0; j < v.size(); ++j) s += m[j] * static_cast<long>(v[j]);
    return s;
}

void for_each_subset(size_t l, size_t k, const std::function<void(const std::vector<size_t>&)>& f) {
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (cur.size() == k) {
            f(cur);
            return;
        }
        for (size_t i = start; i < l; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

std::vector<RVec> section_vertices(const FanData& fan, const std::vector<Rational>& d) {
    const size_t n = static_cast<size_t>(fan.rank), l = fan.rays.size();
    std::vector<RVec> verts;
    for_each_subset(l, n, [&](const std::vector<size_t>& idx) {
        RMat A;
        for (size_t i : idx) {
            RVec row;
            for (long long x : fan.rays[i]) row.emplace_back(static_cast<long>(x));
            row.push_back(-d[i]);
            A.push_back(row);
        }
        auto m = solve(A, n);
        if (!m) return;
        for (size_t i = 0; i < l; ++i)
            if (pairing(*m, fan.rays[i]) < -d[i]) return;
        if (std::find(verts.begin(), verts.end(), *m) == verts.end()) verts.push_back(*m);
    });
    std::sort(verts.begin(), verts.end());
    return verts;
}

bool has_recession_direction(const FanData& fan) {
    const size_t n = static_cast<size_t>(fan.rank), l = fan.rays.size();
    if (n == 0) return false;
    bool found = false;
    for_each_subset(l, n - 1, [&](const std::vector<size_t>& idx) {
        if (found) return;
        RMat A;
        for (size_t i : idx) {
            RVec row;
            for (long long x : fan.rays[i]) row.emplace_back(static_cast<long>(x));
            A.push_back(row);
        }
        auto u = kernel_line(A, n);
        if (!u) return;
        for (int sign : {1, -1}) {
            bool ok = true;
            for (size_t i = 0; i < l && ok; ++i) ok = sign * pairing(*u, fan.rays[i]) >= 0;
            if (ok) found = true;
        }
    });
    return found;
}

}  // namespace

DivisorOnFan DivisorOnFan::make(FanData fan, std::vector<Rational> d) {
    fan.validate();
    if (d.size() != fan.rays.size()) throw RankMismatch("divisor needs one coefficient per ray");
    if (fan.rank > 0 && section_vertices(fan, d).empty())
        throw DomainError("section polytope is empty: the divisor is not effective");
    return DivisorOnFan{std::move(fan), std::move(d)};
}

DegenerationResult direction_degeneration(const DivisorOnFan& D) {
    const FanData& fan = D.fan;
    const size_t l = fan.rays.size();
    if (D.d.size() != l) throw RankMismatch("divisor needs one coefficient per ray");
    if (has_recession_direction(fan)) throw DomainError("section polytope is unbounded: the fan is not complete");
    DegenerationResult res;
    res.vertices = section_vertices(fan, D.d);
    if (fan.rank == 0) res.vertices.push_back({});
    if (res.vertices.empty()) throw DomainError("section polytope is empty: the divisor is not effective");
    for (size_t i = 0; i < l; ++i) {
        std::optional<Rational> lo, hi;
        for (const auto& m : res.vertices) {
            Rational h = D.d[i] + pairing(m, fan.rays[i]);
            if (!lo || h < *lo) lo = h;
            if (!hi || h > *hi) hi = h;
        }
        res.intervals.emplace_back(*lo, *hi);
        if (*lo == 0) res.f_min_support.push_back(i);
        if (*hi == 0) res.f_max_support.push_back(i);
    }
    return res;
}

nlohmann::json DegenerationResult::to_json() const {
    nlohmann::json j;
    j["f_min_support"] = f_min_support;
    j["f_max_support"] = f_max_support;
    j["intervals"] = nlohmann::json::array();
    for (const auto& [lo, hi] : intervals)
        j["intervals"].push_back({render_rational(lo), render_rational(hi)});
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : vertices) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : v) row.push_back(render_rational(x));
        j["vertices"].push_back(row);
    }
    return j;
}

LaurentPolynomial parameter_limit(const LaurentPolynomial& f, const std::set<int>& dying) {
    std::map<int, Rational> zeros;
    for (int i : dying) {
        if (i < 0 || i >= f.param_rank()) throw DomainError("dying parameter index out of range");
        zeros[i] = 0;
    }
    for (const auto& [e, c] : f.terms())
        for (int i : dying)
            if (e[f.rank() + i] < 0)
                throw DomainError("limit diverges: " + parameter_name(i, f.param_rank()) + " appears with a negative exponent");
    return substitute_parameters(f, zeros);
}

LaurentPolynomial restrict_model(const LaurentPolynomial& f, const std::vector<IntVec>& keep) {
    std::vector<Exp> wanted;
    for (const auto& v : keep) {
        if (v.size() != static_cast<size_t>(f.rank())) throw RankMismatch("kept exponent has the wrong length");
        wanted.push_back(exp_from(v));
    }
    std::vector<Exp> supp = f.support();
    for (const auto& e : wanted)
        if (std::find(supp.begin(), supp.end(), e) == supp.end())
            throw DomainError("kept exponent is not in the support of the model");
    std::vector<LaurentPolynomial::Term> terms;
    for (const auto& [e, c] : f.terms()) {
        Exp t;
        for (int i = 0; i < f.rank(); ++i) t[i] = e[i];
        if (std::find(wanted.begin(), wanted.end(), t) != wanted.end()) terms.emplace_back(e, c);
    }
    return LaurentPolynomial::from_terms(f.rank(), f.param_rank(), std::move(terms));
}

LaurentPolynomial ray_model(const FanData& fan, const std::vector<size_t>& rays) {
    std::vector<IntVec> keep;
    for (size_t i : rays) {
        if (i >= fan.rays.size()) throw DomainError("ray index out of range");
        keep.push_back(fan.rays[i]);
    }
    return restrict_model(hori_vafa(fan), keep);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) throw ParseError("empty entry in rational list", 0);
        Rational q;
        if (q.set_str(item, 10) != 0) throw ParseError("not a rational: " + item, 0);
        if (q.get_den() == 0) throw ParseError("zero denominator: " + item, 0);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

}  // namespace lgforge
