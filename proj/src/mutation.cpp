/*
 * mutation.cpp
 * ------------
 * Grading by a covector, exact Laurent division and mutation chains.
 *
 * Divisibility of a graded piece by a^k is decided by exact division: both
 * operands are shifted by monomials into the polynomial ring with no variable
 * dividing them, then divided by the single divisor under graded-lex order.
 */
#include "lgforge/mutation.hpp"

#include <numeric>

#include "lgforge/errors.hpp"

namespace lgforge {

long long weight(const IntVec& w, const Exp& e) {
    long long s = 0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * e[static_cast<int>(i)];
    return s;
}

MutationData MutationData::make(IntVec w, LaurentPolynomial a) {
    if (w.size() != static_cast<size_t>(a.rank()))
        throw RankMismatch("weight length " + std::to_string(w.size()) + " does not match rank " +
                           std::to_string(a.rank()));
    long long g = 0;
    for (long long x : w) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) throw DomainError("mutation weight is the zero covector");
    if (g != 1) throw DomainError("mutation weight is not primitive");
    if (a.is_zero()) throw DomainError("mutation factor is zero");
    for (const auto& [e, c] : a.terms())
        if (weight(w, e) != 0)
            throw DomainError("mutation factor " + a.to_string() + " is not supported on the kernel of the weight");
    return MutationData{std::move(w), std::move(a)};
}

std::map<long long, LaurentPolynomial> grade_by_weight(const LaurentPolynomial& f, const IntVec& w) {
    if (w.size() != static_cast<size_t>(f.rank())) throw RankMismatch("weight length does not match rank");
    if (std::all_of(w.begin(), w.end(), [](long long x) { return x == 0; }))
        throw DomainError("grading by the zero covector");
    std::map<long long, std::vector<LaurentPolynomial::Term>> pieces;
    for (const auto& t : f.terms()) pieces[weight(w, t.first)].push_back(t);
    std::map<long long, LaurentPolynomial> out;
    for (auto& [k, terms] : pieces)
        out.emplace(k, LaurentPolynomial::from_terms(f.rank(), f.param_rank(), std::move(terms)));
    return out;
}

namespace {

// Componentwise minimum exponent over all terms (torus and parameters).
Exp min_exponent(const LaurentPolynomial& p) {
    int m = p.rank() + p.param_rank();
    Exp lo = p.terms().front().first;
    for (const auto& t : p.terms())
        for (int i = 0; i < m; ++i) lo[i] = std::min(lo[i], t.first[i]);
    return lo;
}

}  // namespace

std::optional<LaurentPolynomial> exact_divide(const LaurentPolynomial& p, const LaurentPolynomial& d) {
    if (p.rank() != d.rank() || p.param_rank() != d.param_rank())
        throw RankMismatch("division operands have different layouts");
    if (d.is_zero()) throw DomainError("division by zero");
    const int n = p.rank(), r = p.param_rank(), m = n + r;
    if (p.is_zero()) return LaurentPolynomial(n, r);
    Exp lo_p = min_exponent(p), lo_d = min_exponent(d);
    LaurentPolynomial num = p.shifted(-lo_p);
    LaurentPolynomial den = d.shifted(-lo_d);

    GradedLexDesc cmp{n, r};
    std::map<Exp, Rational, GradedLexDesc> work(cmp);
    for (const auto& t : num.terms()) work.emplace(t.first, t.second);
    const Exp lt = den.terms().front().first;  // terms are sorted, front is leading
    const Rational lc = den.terms().front().second;
    std::vector<LaurentPolynomial::Term> quotient;
    while (!work.empty()) {
        auto head = work.begin();
        Exp q;
        for (int i = 0; i < m; ++i) {
            q[i] = head->first[i] - lt[i];
            if (q[i] < 0) return std::nullopt;
        }
        Rational c = head->second / lc;
        quotient.emplace_back(q, c);
        for (const auto& [e, dc] : den.terms()) {
            Exp key = e + q;
            auto it = work.find(key);
            if (it == work.end()) {
                work.emplace(key, -c * dc);
            } else {
                it->second -= c * dc;
                if (it->second == 0) work.erase(it);
            }
        }
    }
    Exp back;
    for (int i = 0; i < m; ++i) back[i] = lo_p[i] - lo_d[i];
    return LaurentPolynomial::from_terms(n, r, std::move(quotient)).shifted(back);
}

namespace {

LaurentPolynomial apply_mutation(const LaurentPolynomial& f, const MutationData& m, int sign) {
    if (f.rank() != m.a.rank() || f.param_rank() != m.a.param_rank())
        throw RankMismatch("mutation factor layout does not match the polynomial");
    LaurentPolynomial out(f.rank(), f.param_rank());
    for (const auto& [k, piece] : grade_by_weight(f, m.w)) {
        long long e = sign * k;
        LaurentPolynomial term = piece;
        if (e >= 0) {
            term = term * power(m.a, static_cast<unsigned>(e));
        } else {
            for (long long j = 0; j < -e; ++j) {
                auto q = exact_divide(term, m.a);
                if (!q)
                    throw NotMutable(k, "graded piece of weight " + std::to_string(k) + " (" +
                                            piece.to_string() + ") is not divisible by (" +
                                            m.a.to_string() + ")^" + std::to_string(-e));
                term = *q;
            }
        }
        out = out + term;
    }
    return out;
}

}  // namespace

LaurentPolynomial mutate(const LaurentPolynomial& f, const MutationData& m) {
    return apply_mutation(f, m, 1);
}

LaurentPolynomial invert_mutation(const LaurentPolynomial& g, const MutationData& m) {
    return apply_mutation(g, m, -1);
}

// ---------------------------------------------------------------------------
// Chain steps
// ---------------------------------------------------------------------------

std::string ChainStep::kind_name() const {
    switch (kind) {
        case Kind::Mutation: return "mutation";
        case Kind::Coords: return "coords";
        case Kind::Subst: return "subst";
    }
    return "?";
}

ChainStep ChainStep::from_json(const nlohmann::json& j, int rank, int param_rank) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw DomainError("chain step needs a string field 'kind'");
    std::string kind = j["kind"];
    ChainStep s;
    if (kind == "mutation") {
        s.kind = Kind::Mutation;
        if (!j.contains("w") || !j.contains("a")) throw DomainError("mutation step needs 'w' and 'a'");
        IntVec w = j["w"].get<IntVec>();
        s.mutation = MutationData::make(w, parse(j["a"].get<std::string>(), rank, param_rank));
    } else if (kind == "coords") {
        s.kind = Kind::Coords;
        if (j.contains("matrix")) {
            s.matrix = j["matrix"].get<IntMatrix>();
        } else if (j.contains("images")) {
            // images: variable -> monomial it is replaced by; column i of M is the
            // exponent of the image of the i-th variable.
            s.matrix.assign(static_cast<size_t>(rank), IntVec(static_cast<size_t>(rank), 0));
            for (int i = 0; i < rank; ++i) s.matrix[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
            for (const auto& [name, text] : j["images"].items()) {
                LaurentPolynomial v = parse(name, rank, 0);
                LaurentPolynomial img = parse(text.get<std::string>(), rank, 0);
                if (!v.is_monomial() || !img.is_monomial() || img.terms()[0].second != 1)
                    throw DomainError("coordinate image of '" + name + "' must be a monomial");
                int col = 0;
                while (v.terms()[0].first[col] == 0) ++col;
                for (int i = 0; i < rank; ++i)
                    s.matrix[static_cast<size_t>(i)][static_cast<size_t>(col)] = img.terms()[0].first[i];
            }
        } else {
            throw DomainError("coords step needs 'matrix' or 'images'");
        }
        if (s.matrix.size() != static_cast<size_t>(rank)) throw DomainError("coords matrix has wrong size");
        long long det = determinant(s.matrix);
        if (det != 1 && det != -1) throw DomainError("coords matrix is not unimodular");
    } else if (kind == "subst") {
        s.kind = Kind::Subst;
        if (!j.contains("assign") || !j["assign"].is_object()) throw DomainError("subst step needs object 'assign'");
        for (const auto& [name, value] : j["assign"].items()) {
            std::string text = value.is_string() ? value.get<std::string>() : value.dump();
            s.assign[parameter_index(name, param_rank)] = parse(text, 0, 0).rational_value();
        }
    } else {
        throw DomainError("unknown chain step kind '" + kind + "'");
    }
    return s;
}

nlohmann::json ChainStep::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_name();
    if (kind == Kind::Mutation) {
        j["w"] = mutation->w;
        j["a"] = mutation->a.to_string();
    } else if (kind == Kind::Coords) {
        j["matrix"] = matrix;
    } else {
        nlohmann::json a = nlohmann::json::object();
        for (const auto& [idx, v] : assign) a["a" + std::to_string(idx + 1)] = render_rational(v);
        j["assign"] = a;
    }
    return j;
}

ChainReport verify_chain(const LaurentPolynomial& start, const std::vector<ChainStep>& steps,
                         const LaurentPolynomial& expected, int N, bool modulo_constant,
                         PowerMode mode) {
    ChainReport rep;
    LaurentPolynomial cur = start;
    bool all_ok = true;
    for (size_t i = 0; i < steps.size(); ++i) {
        const ChainStep& s = steps[i];
        StepReport sr;
        sr.index = i;
        sr.kind = s.kind_name();
        try {
            LaurentPolynomial next;
            switch (s.kind) {
                case ChainStep::Kind::Mutation: next = mutate(cur, *s.mutation); break;
                case ChainStep::Kind::Coords: next = apply_monomial_map(cur, s.matrix); break;
                case ChainStep::Kind::Subst: next = substitute_parameters(cur, s.assign); break;
            }
            sr.ok = true;
            if (s.kind != ChainStep::Kind::Subst) {
                auto p0 = period_coefficients(cur, N, Flavor::Regularized, mode);
                auto p1 = period_coefficients(next, N, Flavor::Regularized, mode);
                sr.period_preserved = p0.coefficients == p1.coefficients;
                if (!*sr.period_preserved) {
                    sr.ok = false;
                    sr.message = "regularized period changed";
                }
            }
            sr.result = next;
            cur = next;
        } catch (const Error& e) {
            sr.ok = false;
            sr.message = e.what();
        }
        all_ok = all_ok && sr.ok;
        rep.steps.push_back(sr);
        if (!sr.ok && !sr.result) {
            rep.message = "step " + std::to_string(i) + " (" + sr.kind + ") failed: " + sr.message;
            rep.ok = false;
            return rep;
        }
    }
    rep.final_value = cur;
    if (cur.rank() != expected.rank() || cur.param_rank() != expected.param_rank()) {
        rep.message = "final layout differs from expected";
        rep.ok = false;
        return rep;
    }
    LaurentPolynomial diff = cur - expected;
    if (diff.is_zero()) {
        rep.final_matches = true;
        rep.constant_difference = Rational(0);
    } else if (modulo_constant && diff.is_constant() && diff.is_rational()) {
        rep.final_matches = true;
        rep.constant_difference = diff.is_zero() ? Rational(0) : diff.terms()[0].second;
    } else {
        rep.message = "final value " + cur.to_string() + " differs from expected " + expected.to_string();
    }
    if (!all_ok && rep.message.empty()) rep.message = "a step did not preserve the period";
    rep.ok = all_ok && rep.final_matches;
    return rep;
}

}  // namespace lgforge
