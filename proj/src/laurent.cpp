/*
 * laurent.cpp
 * -----------
 * Sparse Laurent polynomial arithmetic, canonical rendering, the expression
 * parser and the Newton polytope vertex computation.
 */
#include "lgforge/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "lgforge/errors.hpp"

namespace lgforge {

// ---------------------------------------------------------------------------
// Exponent vectors
// ---------------------------------------------------------------------------

Exp Exp::operator+(const Exp& o) const {
    Exp r;
    for (int i = 0; i < kMaxVars; ++i) {
        if (__builtin_add_overflow(e[i], o.e[i], &r.e[i]))
            throw DomainError("exponent overflow");
    }
    return r;
}

Exp Exp::operator-() const {
    Exp r;
    for (int i = 0; i < kMaxVars; ++i) {
        if (e[i] == INT32_MIN) throw DomainError("exponent overflow");
        r.e[i] = -e[i];
    }
    return r;
}

bool Exp::is_zero_in(int begin, int end) const {
    for (int i = begin; i < end; ++i)
        if (e[i] != 0) return false;
    return true;
}

size_t ExpHash::operator()(const Exp& x) const noexcept {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int i = 0; i < kMaxVars; i += 2) {
        uint64_t w = (static_cast<uint64_t>(static_cast<uint32_t>(x.e[i])) << 32) |
                     static_cast<uint32_t>(x.e[i + 1]);
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<size_t>(h ^ (h >> 33));
}

namespace {

// Negative when a precedes b in graded-lex descending order on [begin,end).
int graded_lex_cmp(const Exp& a, const Exp& b, int begin, int end) {
    long long da = 0, db = 0;
    for (int i = begin; i < end; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da > db ? -1 : 1;
    for (int i = begin; i < end; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
}

}  // namespace

bool GradedLexDesc::operator()(const Exp& a, const Exp& b) const {
    int c = graded_lex_cmp(a, b, 0, n);
    if (c != 0) return c < 0;
    return graded_lex_cmp(a, b, n, n + r) < 0;
}

IntVec torus_part(const Exp& e, int rank) {
    IntVec v(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) v[static_cast<size_t>(i)] = e[i];
    return v;
}

Exp exp_from(const IntVec& v) {
    if (v.size() > static_cast<size_t>(kMaxVars)) throw DomainError("too many variables");
    Exp e;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] > INT32_MAX || v[i] < INT32_MIN + 1) throw DomainError("exponent overflow");
        e.e[i] = static_cast<int32_t>(v[i]);
    }
    return e;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

namespace {

void check_layout(int rank, int param_rank) {
    if (rank < 0 || param_rank < 0 || rank + param_rank > kMaxVars)
        throw DomainError("unsupported layout: rank " + std::to_string(rank) + " with " +
                          std::to_string(param_rank) + " parameters");
}

void require_same_layout(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.rank() != b.rank() || a.param_rank() != b.param_rank())
        throw RankMismatch("rank mismatch: (" + std::to_string(a.rank()) + "," +
                           std::to_string(a.param_rank()) + ") vs (" + std::to_string(b.rank()) +
                           "," + std::to_string(b.param_rank()) + ")");
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(int rank, int param_rank)
    : rank_(rank), param_rank_(param_rank) {
    check_layout(rank, param_rank);
}

LaurentPolynomial LaurentPolynomial::constant(int rank, int param_rank, const Rational& c) {
    return monomial(rank, param_rank, Exp{}, c);
}

LaurentPolynomial LaurentPolynomial::monomial(int rank, int param_rank, const Exp& e,
                                              const Rational& c) {
    LaurentPolynomial p(rank, param_rank);
    for (int i = rank + param_rank; i < kMaxVars; ++i)
        if (e[i] != 0) throw DomainError("exponent outside layout");
    if (c != 0) p.terms_.emplace_back(e, c);
    return p;
}

LaurentPolynomial LaurentPolynomial::variable(int rank, int param_rank, int index) {
    if (index < 0 || index >= rank) throw DomainError("variable index out of range");
    Exp e;
    e[index] = 1;
    return monomial(rank, param_rank, e);
}

LaurentPolynomial LaurentPolynomial::parameter(int rank, int param_rank, int index) {
    if (index < 0 || index >= param_rank) throw DomainError("parameter index out of range");
    Exp e;
    e[rank + index] = 1;
    return monomial(rank, param_rank, e);
}

LaurentPolynomial LaurentPolynomial::from_terms(int rank, int param_rank,
                                                std::vector<Term> terms) {
    LaurentPolynomial p(rank, param_rank);
    GradedLexDesc cmp{rank, param_rank};
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return cmp(a.first, b.first); });
    for (auto& t : terms) {
        for (int i = rank + param_rank; i < kMaxVars; ++i)
            if (t.first[i] != 0) throw DomainError("exponent outside layout");
        if (!p.terms_.empty() && p.terms_.back().first == t.first) {
            p.terms_.back().second += t.second;
        } else {
            if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
    return p;
}

// ---------------------------------------------------------------------------
// Views
// ---------------------------------------------------------------------------

std::vector<std::pair<Exp, LaurentPolynomial>> LaurentPolynomial::grouped() const {
    std::vector<std::pair<Exp, LaurentPolynomial>> out;
    for (const auto& [e, c] : terms_) {
        Exp torus;
        Exp params;
        for (int i = 0; i < rank_; ++i) torus[i] = e[i];
        for (int j = 0; j < param_rank_; ++j) params[j] = e[rank_ + j];
        if (out.empty() || !(out.back().first == torus))
            out.emplace_back(torus, LaurentPolynomial(0, param_rank_));
        out.back().second.terms_.emplace_back(params, c);
    }
    return out;
}

LaurentPolynomial LaurentPolynomial::coefficient(const Exp& torus_exp) const {
    LaurentPolynomial out(0, param_rank_);
    for (const auto& [e, c] : terms_) {
        bool match = true;
        for (int i = 0; i < rank_ && match; ++i) match = e[i] == torus_exp[i];
        if (!match) continue;
        Exp params;
        for (int j = 0; j < param_rank_; ++j) params[j] = e[rank_ + j];
        out.terms_.emplace_back(params, c);
    }
    return out;
}

std::vector<Exp> LaurentPolynomial::support() const {
    std::vector<Exp> out;
    for (const auto& g : grouped()) out.push_back(g.first);
    return out;
}

bool LaurentPolynomial::is_constant() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.first.is_zero_in(0, rank_); });
}

bool LaurentPolynomial::is_rational() const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
        return t.first.is_zero_in(rank_, rank_ + param_rank_);
    });
}

Rational LaurentPolynomial::rational_value() const {
    if (terms_.empty()) return 0;
    if (terms_.size() != 1 || !terms_[0].first.is_zero_in(0, kMaxVars))
        throw DomainError("value is not a rational constant: " + to_string());
    return terms_[0].second;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
}

LaurentPolynomial LaurentPolynomial::scaled(const Rational& c) const {
    if (c == 0) return LaurentPolynomial(rank_, param_rank_);
    LaurentPolynomial p = *this;
    for (auto& t : p.terms_) t.second *= c;
    return p;
}

LaurentPolynomial LaurentPolynomial::shifted(const Exp& e) const {
    LaurentPolynomial p(rank_, param_rank_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.emplace_back(t.first + e, t.second);
    return p;  // a uniform shift preserves graded-lex order within each block
}

LaurentPolynomial LaurentPolynomial::with_layout(int rank, int param_rank) const {
    std::vector<Term> moved;
    for (const auto& [e, c] : terms_) {
        Exp x;
        for (int i = 0; i < rank_; ++i) {
            if (i >= rank) {
                if (e[i] != 0) throw RankMismatch("variable does not fit the target rank");
                continue;
            }
            x[i] = e[i];
        }
        for (int j = 0; j < param_rank_; ++j) {
            if (j >= param_rank) {
                if (e[rank_ + j] != 0) throw RankMismatch("parameter does not fit the target layout");
                continue;
            }
            x[rank + j] = e[rank_ + j];
        }
        moved.emplace_back(x, c);
    }
    return from_terms(rank, param_rank, std::move(moved));
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.rank_ == b.rank_ && a.param_rank_ == b.param_rank_ && a.terms_ == b.terms_;
}

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    require_same_layout(a, b);
    GradedLexDesc cmp{a.rank_, a.param_rank_};
    LaurentPolynomial out(a.rank_, a.param_rank_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && cmp(a.terms_[i].first, b.terms_[j].first))) {
            out.terms_.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || cmp(b.terms_[j].first, a.terms_[i].first)) {
            out.terms_.push_back(b.terms_[j++]);
        } else {
            Rational s = a.terms_[i].second + b.terms_[j].second;
            if (s != 0) out.terms_.emplace_back(a.terms_[i].first, s);
            ++i;
            ++j;
        }
    }
    return out;
}

LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a + (-b);
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    require_same_layout(a, b);
    std::unordered_map<Exp, Rational, ExpHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
    std::vector<LaurentPolynomial::Term> terms;
    terms.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (c != 0) terms.emplace_back(e, std::move(c));
    return LaurentPolynomial::from_terms(a.rank_, a.param_rank_, std::move(terms));
}

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    return f * g;
}

LaurentPolynomial power(const LaurentPolynomial& f, unsigned d) {
    LaurentPolynomial result = LaurentPolynomial::constant(f.rank(), f.param_rank(), 1);
    LaurentPolynomial base = f;
    while (d > 0) {
        if (d & 1U) result = result * base;
        d >>= 1U;
        if (d > 0) base = base * base;
    }
    return result;
}

LaurentPolynomial constant_term(const LaurentPolynomial& f) {
    return f.coefficient(Exp{});
}

long long determinant(const IntMatrix& M) {
    size_t n = M.size();
    for (const auto& row : M)
        if (row.size() != n) throw DomainError("matrix is not square");
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(M[i][j]);
    Integer prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    Integer det = a[n - 1][n - 1] * sign;
    if (!det.fits_slong_p()) throw DomainError("determinant overflow");
    return det.get_si();
}

LaurentPolynomial apply_monomial_map(const LaurentPolynomial& f, const IntMatrix& M) {
    int n = f.rank();
    if (M.size() != static_cast<size_t>(n)) throw RankMismatch("matrix size does not match rank");
    long long det = determinant(M);
    if (det != 1 && det != -1) throw DomainError("matrix is not unimodular (det " + std::to_string(det) + ")");
    std::vector<LaurentPolynomial::Term> terms;
    terms.reserve(f.size());
    for (const auto& [e, c] : f.terms()) {
        Exp img = e;
        for (int i = 0; i < n; ++i) {
            long long s = 0;
            for (int j = 0; j < n; ++j) s += M[static_cast<size_t>(i)][static_cast<size_t>(j)] * e[j];
            if (s > INT32_MAX || s < INT32_MIN + 1) throw DomainError("exponent overflow");
            img[i] = static_cast<int32_t>(s);
        }
        terms.emplace_back(img, c);
    }
    return LaurentPolynomial::from_terms(n, f.param_rank(), std::move(terms));
}

LaurentPolynomial substitute_parameters(const LaurentPolynomial& f,
                                        const std::map<int, Rational>& values) {
    int n = f.rank(), r = f.param_rank();
    for (const auto& [idx, v] : values)
        if (idx < 0 || idx >= r)
            throw DomainError("parameter index " + std::to_string(idx + 1) + " out of range");
    std::vector<int> new_index(static_cast<size_t>(r), -1);
    int kept = 0;
    for (int j = 0; j < r; ++j)
        if (!values.count(j)) new_index[static_cast<size_t>(j)] = kept++;
    std::vector<LaurentPolynomial::Term> terms;
    for (const auto& [e, c] : f.terms()) {
        Rational coef = c;
        Exp out;
        for (int i = 0; i < n; ++i) out[i] = e[i];
        for (int j = 0; j < r; ++j) {
            int32_t k = e[n + j];
            auto it = values.find(j);
            if (it == values.end()) {
                out[n + new_index[static_cast<size_t>(j)]] = k;
                continue;
            }
            const Rational& v = it->second;
            if (v == 0) {
                if (k < 0)
                    throw DomainError("parameter " + parameter_name(j, r) +
                                      " appears with a negative exponent and cannot be set to 0");
                if (k > 0) coef = 0;
                continue;
            }
            Rational p = 1;
            Rational base = k >= 0 ? v : Rational(1) / v;
            for (int32_t t = 0; t < (k >= 0 ? k : -k); ++t) p *= base;
            coef *= p;
        }
        if (coef != 0) terms.emplace_back(out, coef);
    }
    return LaurentPolynomial::from_terms(n, kept, std::move(terms));
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string variable_name(int index, int rank) {
    static const char* kShort[] = {"x", "y", "z", "w"};
    if (rank <= 4) return kShort[index];
    return "x" + std::to_string(index + 1);
}

std::string parameter_name(int index, int param_rank) {
    (void)param_rank;
    return "a" + std::to_string(index + 1);
}

std::string render_rational(const Rational& q) {
    return q.get_str();
}

namespace {

std::string factor_text(const std::string& name, long long k) {
    return k == 1 ? name : name + "^" + std::to_string(k);
}

// Renders c * (parameter monomial) * x^torus as a single signed term; the sign
// is returned separately so the caller can join terms.
std::pair<bool, std::string> render_simple_term(const Rational& c, const Exp& params,
                                                int param_rank, const Exp& torus, int rank) {
    std::vector<std::string> num, den;
    for (int j = 0; j < param_rank; ++j) {
        if (params[j] > 0) num.push_back(factor_text(parameter_name(j, param_rank), params[j]));
        if (params[j] < 0) den.push_back(factor_text(parameter_name(j, param_rank), -params[j]));
    }
    for (int i = 0; i < rank; ++i) {
        if (torus[i] > 0) num.push_back(factor_text(variable_name(i, rank), torus[i]));
        if (torus[i] < 0) den.push_back(factor_text(variable_name(i, rank), -torus[i]));
    }
    Rational mag = abs(c);
    std::string body;
    if (mag != 1 || num.empty()) body = render_rational(mag);
    for (const auto& s : num) body += (body.empty() ? "" : "*") + s;
    if (!den.empty()) {
        std::string d;
        for (const auto& s : den) d += (d.empty() ? "" : "*") + s;
        body += "/" + (den.size() == 1 ? d : "(" + d + ")");
    }
    return {c < 0, body};
}

}  // namespace

std::string render(const LaurentPolynomial& f) {
    if (f.is_zero()) return "0";
    int n = f.rank(), r = f.param_rank();
    std::string out;
    auto append = [&](bool negative, const std::string& body) {
        if (out.empty())
            out = negative ? "-" + body : body;
        else
            out += (negative ? "-" : "+") + body;
    };
    for (const auto& [torus, coef] : f.grouped()) {
        const auto& pterms = coef.terms();
        if (pterms.size() == 1 || torus.is_zero_in(0, n)) {
            for (const auto& [pe, c] : pterms) {
                auto [neg, body] = render_simple_term(c, pe, r, torus, n);
                append(neg, body);
            }
            continue;
        }
        std::string body = "(" + render(coef) + ")";
        std::vector<std::string> num, den;
        for (int i = 0; i < n; ++i) {
            if (torus[i] > 0) num.push_back(factor_text(variable_name(i, n), torus[i]));
            if (torus[i] < 0) den.push_back(factor_text(variable_name(i, n), -torus[i]));
        }
        for (const auto& s : num) body += "*" + s;
        if (!den.empty()) {
            std::string d;
            for (const auto& s : den) d += (d.empty() ? "" : "*") + s;
            body += "/" + (den.size() == 1 ? d : "(" + d + ")");
        }
        append(false, body);
    }
    return out;
}

std::string LaurentPolynomial::to_string() const { return render(*this); }

int parameter_index(const std::string& name, int param_rank) {
    if (name == "a" && param_rank == 1) return 0;
    if (name.size() >= 2 && name[0] == 'a' && name[1] != '0' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
        name.size() <= 4) {
        int idx = std::stoi(name.substr(1)) - 1;
        if (idx < param_rank) return idx;
    }
    throw DomainError("unknown parameter '" + name + "'");
}

std::string render_compact(const LaurentPolynomial& f) {
    std::string out = render(f);
    if (f.rank() <= 4) out.erase(std::remove(out.begin(), out.end(), '*'), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(const std::string& text, int rank, int param_rank)
        : s_(text), n_(rank), r_(param_rank) {}

    LaurentPolynomial run() {
        skip_ws();
        if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
        LaurentPolynomial v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return v;
    }

private:
    const std::string& s_;
    int n_, r_;
    size_t pos_ = 0;
    int depth_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    LaurentPolynomial expr() {
        if (++depth_ > 200) throw ParseError("expression nested too deeply", pos_);
        LaurentPolynomial acc(n_, r_);
        bool first = true;
        while (true) {
            skip_ws();
            bool negative = false;
            if (accept('-')) {
                negative = true;
            } else if (!accept('+') && !first) {
                break;
            }
            LaurentPolynomial t = term();
            acc = negative ? acc - t : acc + t;
            first = false;
        }
        --depth_;
        return acc;
    }

    LaurentPolynomial term() {
        LaurentPolynomial acc = factor();
        while (true) {
            if (accept('*')) {
                acc = acc * factor();
            } else if (accept('/')) {
                size_t at = pos_;
                acc = acc * invert(factor(), at);
            } else {
                return acc;
            }
        }
    }

    LaurentPolynomial invert(const LaurentPolynomial& d, size_t at) {
        if (d.is_zero()) throw ParseError("division by zero", at);
        if (!d.is_monomial()) throw ParseError("denominator is not a single monomial", at);
        const auto& [e, c] = d.terms()[0];
        return LaurentPolynomial::monomial(n_, r_, -e, Rational(1) / c);
    }

    LaurentPolynomial factor() {
        skip_ws();
        if (accept('-')) return -factor();
        LaurentPolynomial b = base();
        if (accept('^')) {
            skip_ws();
            size_t at = pos_;
            bool neg = false;
            if (accept('-')) neg = true;
            skip_ws();
            long long k = integer_literal();
            if (k > 4096) throw ParseError("exponent too large", at);
            if (neg) b = invert(b, at);
            b = power(b, static_cast<unsigned>(k));
        }
        return b;
    }

    long long integer_literal() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer", start);
        if (pos_ - start > 12) throw ParseError("integer too large", start);
        return std::stoll(s_.substr(start, pos_ - start));
    }

    LaurentPolynomial base() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentPolynomial v = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Integer z(s_.substr(start, pos_ - start));
            return LaurentPolynomial::constant(n_, r_, Rational(z));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return identifier(s_.substr(start, pos_ - start), start);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    LaurentPolynomial identifier(const std::string& name, size_t at) {
        static const std::string kShort = "xyzw";
        if (name.size() == 1 && kShort.find(name[0]) != std::string::npos) {
            int idx = static_cast<int>(kShort.find(name[0]));
            if (n_ > 4 || idx >= n_) throw ParseError("undeclared variable '" + name + "'", at);
            return LaurentPolynomial::variable(n_, r_, idx);
        }
        if (name == "a") {
            if (r_ != 1) throw ParseError("parameter 'a' requires exactly one parameter", at);
            return LaurentPolynomial::parameter(n_, r_, 0);
        }
        if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'a') &&
            std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) &&
            name[1] != '0' && name.size() <= 4) {
            int idx = std::stoi(name.substr(1)) - 1;
            if (name[0] == 'x') {
                if (idx >= n_) throw ParseError("undeclared variable '" + name + "'", at);
                return LaurentPolynomial::variable(n_, r_, idx);
            }
            if (idx >= r_) throw ParseError("undeclared parameter '" + name + "'", at);
            return LaurentPolynomial::parameter(n_, r_, idx);
        }
        throw ParseError("unknown identifier '" + name + "'", at);
    }
};

}  // namespace

LaurentPolynomial parse(const std::string& text, int rank, int param_rank) {
    check_layout(rank, param_rank);
    return Parser(text, rank, param_rank).run();
}

// ---------------------------------------------------------------------------
// Convex hull vertices
// ---------------------------------------------------------------------------

namespace {

// Rank of an integer matrix (rows) by exact fraction-free elimination; also
// reports the pivot columns.
int integer_rank(std::vector<std::vector<Integer>> a, std::vector<size_t>* pivots) {
    size_t rows = a.size();
    if (rows == 0) return 0;
    size_t cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Integer f = a[i][c], g = a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] * g - a[r][j] * f;
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return static_cast<int>(r);
}

// Normal of the hyperplane through d points in Z^d (generalized cross product).
std::vector<Integer> hyperplane_normal(const std::vector<const IntVec*>& pts) {
    size_t d = pts.size();
    std::vector<std::vector<Integer>> diff(d - 1, std::vector<Integer>(d));
    for (size_t k = 1; k < d; ++k)
        for (size_t j = 0; j < d; ++j) diff[k - 1][j] = static_cast<long>((*pts[k])[j] - (*pts[0])[j]);
    std::vector<Integer> normal(d);
    for (size_t j = 0; j < d; ++j) {
        IntMatrix minor;
        for (size_t k = 0; k + 1 < d; ++k) {
            IntVec row;
            for (size_t c = 0; c < d; ++c)
                if (c != j) row.push_back(diff[k][c].get_si());
            minor.push_back(row);
        }
        long long m = determinant(minor);
        normal[j] = static_cast<long>((j % 2) ? -m : m);
    }
    return normal;
}

}  // namespace

NewtonPolytopeData convex_hull_vertices(int rank, const std::vector<IntVec>& input) {
    NewtonPolytopeData out;
    out.rank = rank;
    std::vector<IntVec> pts(input.begin(), input.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) throw DomainError("convex hull of an empty point set");
    if (pts.size() == 1) {
        out.vertices = pts;
        out.dimension = 0;
        return out;
    }
    std::vector<std::vector<Integer>> diffs;
    for (size_t i = 1; i < pts.size(); ++i) {
        std::vector<Integer> row;
        for (int j = 0; j < rank; ++j) row.emplace_back(static_cast<long>(pts[i][static_cast<size_t>(j)] - pts[0][static_cast<size_t>(j)]));
        diffs.push_back(row);
    }
    std::vector<size_t> pivots;
    int d = integer_rank(diffs, &pivots);
    out.dimension = d;
    // Coordinate projection onto pivot columns is injective on the affine hull.
    std::vector<IntVec> q;
    for (const auto& p : pts) {
        IntVec v;
        for (size_t c : pivots) v.push_back(p[c]);
        q.push_back(v);
    }
    size_t m = q.size();
    std::vector<bool> is_vertex(m, false);
    if (d == 1) {
        size_t lo = 0, hi = 0;
        for (size_t i = 0; i < m; ++i) {
            if (q[i][0] < q[lo][0]) lo = i;
            if (q[i][0] > q[hi][0]) hi = i;
        }
        is_vertex[lo] = is_vertex[hi] = true;
    } else {
        // Enumerate supporting hyperplanes through d affinely independent points.
        std::set<std::vector<Integer>> facets;
        std::vector<size_t> idx(static_cast<size_t>(d));
        std::function<void(size_t, size_t)> rec = [&](size_t start, size_t k) {
            if (k == static_cast<size_t>(d)) {
                std::vector<const IntVec*> sel;
                for (size_t i : idx) sel.push_back(&q[i]);
                std::vector<Integer> nrm = hyperplane_normal(sel);
                if (std::all_of(nrm.begin(), nrm.end(), [](const Integer& z) { return z == 0; })) return;
                Integer b = 0;
                for (size_t j = 0; j < nrm.size(); ++j) b += nrm[j] * static_cast<long>(q[idx[0]][j]);
                int sign = 0;
                for (size_t i = 0; i < m; ++i) {
                    Integer s = -b;
                    for (size_t j = 0; j < nrm.size(); ++j) s += nrm[j] * static_cast<long>(q[i][j]);
                    int sg = sgn(s);
                    if (sg == 0) continue;
                    if (sign == 0) sign = sg;
                    else if (sg != sign) return;
                }
                if (sign > 0) {
                    for (auto& z : nrm) z = -z;
                    b = -b;
                }
                Integer g = abs(b);
                for (auto& z : nrm) g = gcd(g, z);
                for (auto& z : nrm) z /= g;
                b /= g;
                nrm.push_back(b);
                facets.insert(nrm);
                return;
            }
            for (size_t i = start; i < m; ++i) {
                idx[k] = i;
                rec(i + 1, k + 1);
            }
        };
        rec(0, 0);
        for (size_t i = 0; i < m; ++i) {
            std::vector<std::vector<Integer>> tight;
            for (const auto& f : facets) {
                Integer s = -f.back();
                for (size_t j = 0; j + 1 < f.size(); ++j) s += f[j] * static_cast<long>(q[i][j]);
                if (s == 0) tight.emplace_back(f.begin(), f.end() - 1);
            }
            is_vertex[i] = integer_rank(tight, nullptr) == d;
        }
    }
    for (size_t i = 0; i < m; ++i)
        if (is_vertex[i]) out.vertices.push_back(pts[i]);
    return out;
}

NewtonPolytopeData newton_polytope(const LaurentPolynomial& f) {
    if (f.is_zero()) throw DomainError("Newton polytope of the zero polynomial");
    std::vector<IntVec> pts;
    for (const Exp& e : f.support()) pts.push_back(torus_part(e, f.rank()));
    return convex_hull_vertices(f.rank(), pts);
}

}  // namespace lgforge
