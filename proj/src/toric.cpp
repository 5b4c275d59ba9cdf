/*
 * toric.cpp
 * ---------
 * Class groups via Smith normal form, depth-first relation enumeration and
 * the multinomial quantum-period formulas.
 */
#include "lgforge/toric.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "lgforge/errors.hpp"
#include "lgforge/intlin.hpp"

namespace lgforge {

namespace {

long long gcd_of(const IntVec& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

Integer factorial(long long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

ZMatrix ray_matrix(const FanData& fan) {
    return to_z(fan.rays);
}

}  // namespace

// ---------------------------------------------------------------------------
// FanData
// ---------------------------------------------------------------------------

void FanData::validate() const {
    if (rank < 0 || rank > kMaxVars) throw DomainError("unsupported fan rank");
    std::set<IntVec> seen;
    for (const auto& v : rays) {
        if (v.size() != static_cast<size_t>(rank)) throw DomainError("ray has wrong length");
        if (gcd_of(v) != 1) throw DomainError("ray is not primitive");
        if (!seen.insert(v).second) throw DomainError("duplicate ray");
    }
    if (rank > 0) {
        SmithForm sf = smith_form(ray_matrix(*this), rays.size(), static_cast<size_t>(rank));
        if (sf.rank != static_cast<size_t>(rank)) throw DomainError("rays do not span the lattice over Q");
    }
    for (const auto& c : cones)
        for (size_t i : c)
            if (i >= rays.size()) throw DomainError("cone refers to a missing ray");
    if (basis_rays)
        for (size_t i : *basis_rays)
            if (i >= rays.size()) throw DomainError("basis refers to a missing ray");
}

FanData FanData::from_json(const nlohmann::json& j) {
    FanData fan;
    try {
        fan.rank = j.at("rank").get<int>();
        fan.rays = j.at("rays").get<std::vector<IntVec>>();
        if (j.contains("cones")) fan.cones = j["cones"].get<std::vector<std::vector<size_t>>>();
        if (j.contains("basis")) fan.basis_rays = j["basis"].get<std::vector<size_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed fan: ") + e.what());
    }
    fan.validate();
    return fan;
}

nlohmann::json FanData::to_json() const {
    nlohmann::json j;
    j["rank"] = rank;
    j["rays"] = rays;
    if (!cones.empty()) j["cones"] = cones;
    if (basis_rays) j["basis"] = *basis_rays;
    return j;
}

namespace fans {

FanData projective_space(int n) {
    FanData f;
    f.rank = n;
    IntVec last(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        IntVec e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(i)] = 1;
        f.rays.push_back(e);
    }
    f.rays.push_back(last);
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<size_t> c;
        for (int i = 0; i <= n; ++i)
            if (i != skip) c.push_back(static_cast<size_t>(i));
        f.cones.push_back(c);
    }
    return f;
}

FanData product(const FanData& a, const FanData& b) {
    FanData f;
    f.rank = a.rank + b.rank;
    for (const auto& v : a.rays) {
        IntVec w = v;
        w.resize(static_cast<size_t>(f.rank), 0);
        f.rays.push_back(w);
    }
    for (const auto& u : b.rays) {
        IntVec w(static_cast<size_t>(a.rank), 0);
        w.insert(w.end(), u.begin(), u.end());
        f.rays.push_back(w);
    }
    if (!a.cones.empty() && !b.cones.empty())
        for (const auto& ca : a.cones)
            for (const auto& cb : b.cones) {
                std::vector<size_t> c = ca;
                for (size_t i : cb) c.push_back(i + a.rays.size());
                f.cones.push_back(c);
            }
    return f;
}

}  // namespace fans

// ---------------------------------------------------------------------------
// Class group
// ---------------------------------------------------------------------------

namespace {

// Coordinates of each column of C (r x l) in the basis given by columns
// `basis` of C; empty when those columns are not a Z-basis.
std::optional<std::vector<IntVec>> express_in_basis(const ZMatrix& C, const std::vector<size_t>& basis) {
    size_t r = basis.size();
    ZMatrix B(r, std::vector<Integer>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) B[i][j] = C[i][basis[j]];
    // Solve B y = c exactly with rationals (Gauss-Jordan on the augmented system).
    size_t l = C.empty() ? 0 : C[0].size();
    std::vector<std::vector<Rational>> M(r, std::vector<Rational>(r + l));
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) M[i][j] = B[i][j];
        for (size_t j = 0; j < l; ++j) M[i][r + j] = C[i][j];
    }
    for (size_t c = 0; c < r; ++c) {
        size_t p = c;
        while (p < r && M[p][c] == 0) ++p;
        if (p == r) return std::nullopt;
        std::swap(M[p], M[c]);
        Rational inv = 1 / M[c][c];
        for (auto& x : M[c]) x *= inv;
        for (size_t i = 0; i < r; ++i) {
            if (i == c || M[i][c] == 0) continue;
            Rational f = M[i][c];
            for (size_t j = 0; j < r + l; ++j) M[i][j] -= f * M[c][j];
        }
    }
    // Unimodularity: the basis classes must generate, i.e. every class has
    // integer coordinates and det B = +-1.
    IntMatrix Bi = from_z(B);
    long long det = determinant(Bi);
    if (det != 1 && det != -1) return std::nullopt;
    std::vector<IntVec> out(l, IntVec(r));
    for (size_t j = 0; j < l; ++j)
        for (size_t i = 0; i < r; ++i) {
            const Rational& x = M[i][r + j];
            if (x.get_den() != 1) return std::nullopt;
            out[j][i] = x.get_num().get_si();
        }
    return out;
}

}  // namespace

ClassGroupData class_group(const FanData& fan) {
    fan.validate();
    const size_t l = fan.rays.size(), n = static_cast<size_t>(fan.rank);
    ClassGroupData cg;
    SmithForm sf = smith_form(ray_matrix(fan), l, n);
    for (size_t i = 0; i < n; ++i)
        if (sf.S[i][i] != 1) throw DomainError("class group has torsion (invariant factor " + sf.S[i][i].get_str() + ")");
    const size_t r = l - n;
    cg.class_rank = static_cast<int>(r);
    // Raw classes: rows n..l-1 of U, one column per ray.
    ZMatrix C(r, std::vector<Integer>(l));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < l; ++j) C[i][j] = sf.U[n + i][j];
    cg.relation_basis = from_z(kernel_basis(transpose(ray_matrix(fan)), l));

    std::optional<std::vector<IntVec>> chosen;
    if (fan.basis_rays) {
        if (fan.basis_rays->size() != r) throw DomainError("pinned basis has the wrong size");
        chosen = express_in_basis(C, *fan.basis_rays);
        if (!chosen) throw DomainError("pinned basis rays do not form a basis of the class group");
        cg.basis_rays = *fan.basis_rays;
    } else {
        // Prefer the lexicographically largest subset of rays with nonnegative coordinates.
        std::vector<std::vector<size_t>> subsets;
        std::vector<size_t> cur;
        std::function<void(size_t)> rec = [&](size_t start) {
            if (cur.size() == r) {
                subsets.push_back(cur);
                return;
            }
            for (size_t i = start; i < l; ++i) {
                cur.push_back(i);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
        std::reverse(subsets.begin(), subsets.end());
        std::optional<std::vector<size_t>> first_unimodular;
        std::optional<std::vector<IntVec>> first_coords;
        for (const auto& s : subsets) {
            auto coords = express_in_basis(C, s);
            if (!coords) continue;
            if (!first_unimodular) {
                first_unimodular = s;
                first_coords = coords;
            }
            bool nonneg = std::all_of(coords->begin(), coords->end(), [](const IntVec& v) {
                return std::all_of(v.begin(), v.end(), [](long long x) { return x >= 0; });
            });
            if (nonneg) {
                chosen = coords;
                cg.basis_rays = s;
                break;
            }
        }
        if (!chosen && first_unimodular) {
            chosen = first_coords;
            cg.basis_rays = *first_unimodular;
        }
        if (!chosen) {
            chosen = std::vector<IntVec>(l, IntVec(r));
            for (size_t j = 0; j < l; ++j)
                for (size_t i = 0; i < r; ++i) (*chosen)[j][i] = C[i][j].get_si();
        }
    }
    cg.class_map = *chosen;
    cg.nonnegative = std::all_of(cg.class_map.begin(), cg.class_map.end(), [](const IntVec& v) {
        return std::all_of(v.begin(), v.end(), [](long long x) { return x >= 0; });
    });
    return cg;
}

// ---------------------------------------------------------------------------
// Relation enumeration
// ---------------------------------------------------------------------------

namespace {

// Enumerates k >= 0 with sum k_i v_i = 0 where rays are split into two groups:
// group 0 must sum exactly to exact0 (if set) and group 1 sums to at most cap1.
// Without exact0 group 0 is capped by cap0.
void enumerate_relations(const FanData& fan, const std::vector<int>& group, long long cap0,
                         bool exact0, long long cap1, const std::function<void(const IntVec&)>& emit) {
    const size_t l = fan.rays.size(), n = static_cast<size_t>(fan.rank);
    // Suffix bounds per coordinate and group.
    std::vector<std::array<std::vector<long long>, 2>> lo(l + 1), hi(l + 1);
    for (size_t i = 0; i <= l; ++i)
        for (int g = 0; g < 2; ++g) {
            lo[i][g].assign(n, 0);
            hi[i][g].assign(n, 0);
        }
    for (size_t i = l; i-- > 0;) {
        lo[i] = lo[i + 1];
        hi[i] = hi[i + 1];
        int g = group[i];
        for (size_t j = 0; j < n; ++j) {
            lo[i][g][j] = std::min(lo[i][g][j], fan.rays[i][j]);
            hi[i][g][j] = std::max(hi[i][g][j], fan.rays[i][j]);
        }
    }
    IntVec k(l, 0), s(n, 0);
    std::function<void(size_t, long long, long long)> rec = [&](size_t i, long long b0, long long b1) {
        for (size_t j = 0; j < n; ++j) {
            long long need = -s[j];
            if (need < b0 * lo[i][0][j] + b1 * lo[i][1][j] || need > b0 * hi[i][0][j] + b1 * hi[i][1][j]) return;
        }
        if (i == l) {
            if (exact0 && b0 != 0) return;
            if (std::all_of(s.begin(), s.end(), [](long long x) { return x == 0; })) emit(k);
            return;
        }
        long long budget = group[i] == 0 ? b0 : b1;
        for (long long c = 0; c <= budget; ++c) {
            k[i] = c;
            if (c > 0)
                for (size_t j = 0; j < n; ++j) s[j] += fan.rays[i][j];
            if (group[i] == 0)
                rec(i + 1, b0 - c, b1);
            else
                rec(i + 1, b0, b1 - c);
        }
        for (size_t j = 0; j < n; ++j) s[j] -= budget * fan.rays[i][j];
        k[i] = 0;
    };
    rec(0, cap0, cap1);
}

}  // namespace

std::vector<IntVec> relation_monoid(const FanData& fan, int B) {
    fan.validate();
    if (B < 0) throw DomainError("degree bound must be nonnegative");
    std::vector<IntVec> out;
    std::vector<int> group(fan.rays.size(), 0);
    enumerate_relations(fan, group, B, false, 0, [&](const IntVec& k) { out.push_back(k); });
    return out;
}

LaurentPolynomial hori_vafa(const FanData& fan) {
    fan.validate();
    std::vector<LaurentPolynomial::Term> terms;
    for (const auto& v : fan.rays) terms.emplace_back(exp_from(v), Rational(1));
    return LaurentPolynomial::from_terms(fan.rank, 0, std::move(terms));
}

namespace {

void require_ray_basis(const FanData& fan, const ClassGroupData& cg) {
    if (cg.basis_rays.size() != static_cast<size_t>(cg.class_rank))
        throw DomainError("class group basis is not given by ray divisors");
    if (cg.class_map.size() != fan.rays.size()) throw DomainError("class group does not match the fan");
}

Exp parameter_degree(const IntVec& k, const ClassGroupData& cg) {
    Exp e;
    for (size_t j = 0; j < cg.basis_rays.size(); ++j) {
        long long d = k[cg.basis_rays[j]];
        if (d > INT32_MAX) throw DomainError("exponent overflow");
        e[static_cast<int>(j)] = static_cast<int32_t>(d);
    }
    return e;
}

}  // namespace

LaurentPolynomial toric_pair_model(const FanData& fan, const ClassGroupData& cg) {
    fan.validate();
    require_ray_basis(fan, cg);
    if (!cg.nonnegative)
        throw DomainError("a ray class has negative coordinates in the chosen basis; pin a different basis");
    const int n = fan.rank, r = cg.class_rank;
    std::vector<LaurentPolynomial::Term> terms;
    for (size_t i = 0; i < fan.rays.size(); ++i) {
        Exp e = exp_from(fan.rays[i]);
        for (size_t j = 0; j < cg.basis_rays.size(); ++j)
            if (cg.basis_rays[j] == i) e[n + static_cast<int>(j)] = 1;
        terms.emplace_back(e, Rational(1));
    }
    return LaurentPolynomial::from_terms(n, r, std::move(terms));
}

PeriodSeries toric_quantum_period(const FanData& fan, const ClassGroupData& cg, int N) {
    fan.validate();
    require_ray_basis(fan, cg);
    if (N < 0) throw DomainError("period order must be nonnegative");
    const int r = cg.class_rank;
    std::vector<std::vector<LaurentPolynomial::Term>> acc(static_cast<size_t>(N) + 1);
    std::vector<int> group(fan.rays.size(), 0);
    enumerate_relations(fan, group, N, false, 0, [&](const IntVec& k) {
        long long d = std::accumulate(k.begin(), k.end(), 0LL);
        Integer c = factorial(d);
        for (long long x : k) c /= factorial(x);
        acc[static_cast<size_t>(d)].emplace_back(parameter_degree(k, cg), Rational(c));
    });
    PeriodSeries out;
    out.order = N;
    out.flavor = Flavor::Regularized;
    out.param_rank = r;
    for (auto& terms : acc) out.coefficients.push_back(LaurentPolynomial::from_terms(0, r, std::move(terms)));
    return out;
}

PeriodSeries ci_quantum_period(const FanData& fan, const ClassGroupData& cg,
                               const NefPartition& part, int N) {
    fan.validate();
    require_ray_basis(fan, cg);
    if (N < 0) throw DomainError("period order must be nonnegative");
    const size_t l = fan.rays.size(), n = static_cast<size_t>(fan.rank);
    if (part.blocks.size() < 2) throw DomainError("nef partition needs S_0 and at least one further block");
    if (part.blocks[0].empty()) throw DomainError("nef partition has empty S_0");
    std::vector<int> block_of(l, -1);
    for (size_t b = 0; b < part.blocks.size(); ++b)
        for (size_t i : part.blocks[b]) {
            if (i >= l) throw DomainError("nef partition refers to a missing ray");
            if (block_of[i] != -1) throw DomainError("nef partition blocks overlap");
            block_of[i] = static_cast<int>(b);
        }
    if (std::count(block_of.begin(), block_of.end(), -1) != 0)
        throw DomainError("nef partition does not cover every ray");

    // Bound the rays outside S_0 with a functional u positive on all of them:
    // sum_{j not in S_0} k_j u(v_j) = -sum_{S_0} k_j u(v_j) <= d * max(-u(v_j)).
    // Perceptron iteration: terminates exactly when such a u exists.
    std::optional<IntVec> u;
    IntVec cand(n, 0);
    for (int iter = 0; iter < 100000 && !u; ++iter) {
        bool ok = true;
        for (size_t i = 0; i < l && ok; ++i) {
            if (block_of[i] == 0) continue;
            long long s = 0;
            for (size_t j = 0; j < n; ++j) s += cand[j] * fan.rays[i][j];
            if (s <= 0) {
                for (size_t j = 0; j < n; ++j) cand[j] += fan.rays[i][j];
                ok = false;
            }
        }
        if (ok) u = cand;
    }
    if (!u) throw DomainError("rays outside S_0 admit a nonnegative relation; the series is not finite");
    long long worst = 0, best = -1;
    for (size_t i = 0; i < l; ++i) {
        long long s = 0;
        for (size_t j = 0; j < n; ++j) s += (*u)[j] * fan.rays[i][j];
        if (block_of[i] == 0)
            worst = std::max(worst, -s);
        else
            best = best < 0 ? s : std::min(best, s);
    }

    const int r = cg.class_rank;
    PeriodSeries out;
    out.order = N;
    out.flavor = Flavor::Regularized;
    out.param_rank = r;
    std::vector<int> group(l);
    for (size_t i = 0; i < l; ++i) group[i] = block_of[i] == 0 ? 0 : 1;
    for (int d = 0; d <= N; ++d) {
        long long cap1 = best > 0 ? (d * worst) / best : 0;
        std::vector<LaurentPolynomial::Term> terms;
        enumerate_relations(fan, group, d, true, cap1, [&](const IntVec& k) {
            std::vector<long long> sums(part.blocks.size(), 0);
            for (size_t i = 0; i < l; ++i) sums[static_cast<size_t>(block_of[i])] += k[i];
            Integer c = 1;
            for (long long s : sums) c *= factorial(s);
            for (long long x : k) c /= factorial(x);
            terms.emplace_back(parameter_degree(k, cg), Rational(c));
        });
        out.coefficients.push_back(LaurentPolynomial::from_terms(0, r, std::move(terms)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fibre fans
// ---------------------------------------------------------------------------

FanData fibre_fan(const FanData& fan, const IntMatrix& projection) {
    fan.validate();
    const size_t n = static_cast<size_t>(fan.rank), m = projection.size();
    for (const auto& row : projection)
        if (row.size() != n) throw RankMismatch("projection has the wrong number of columns");
    SmithForm sf = smith_form(to_z(projection), m, n);
    if (sf.rank != m) throw DomainError("projection is not surjective");
    for (size_t i = 0; i < m; ++i)
        if (sf.S[i][i] != 1) throw DomainError("projection is not surjective onto the integer lattice");
    ZMatrix K = kernel_basis(to_z(projection), n);
    FanData out;
    out.rank = static_cast<int>(K.size());
    std::vector<long long> new_index(fan.rays.size(), -1);
    for (size_t i = 0; i < fan.rays.size(); ++i) {
        const IntVec& v = fan.rays[i];
        bool in_kernel = true;
        for (const auto& row : projection) {
            long long s = 0;
            for (size_t j = 0; j < n; ++j) s += row[j] * v[j];
            in_kernel = in_kernel && s == 0;
        }
        if (!in_kernel) continue;
        // Back-substitution through the echelon basis.
        std::vector<Integer> rem(n);
        for (size_t j = 0; j < n; ++j) rem[j] = static_cast<long>(v[j]);
        IntVec coords;
        for (const auto& b : K) {
            size_t p = 0;
            while (b[p] == 0) ++p;
            Integer c = rem[p] / b[p];
            for (size_t j = 0; j < n; ++j) rem[j] -= c * b[j];
            coords.push_back(c.get_si());
        }
        new_index[i] = static_cast<long long>(out.rays.size());
        out.rays.push_back(coords);
    }
    std::set<std::vector<size_t>> faces;
    for (const auto& c : fan.cones) {
        std::vector<size_t> f;
        for (size_t i : c)
            if (new_index[i] >= 0) f.push_back(static_cast<size_t>(new_index[i]));
        std::sort(f.begin(), f.end());
        if (!f.empty()) faces.insert(f);
    }
    for (const auto& f : faces) {
        bool maximal = std::none_of(faces.begin(), faces.end(), [&](const std::vector<size_t>& g) {
            return g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end());
        });
        if (maximal) out.cones.push_back(f);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weighted projective planes and Markov triples
// ---------------------------------------------------------------------------

std::vector<IntVec> gl2_normal_form(const std::vector<IntVec>& vectors) {
    std::vector<size_t> perm(vectors.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<IntMatrix> best;
    do {
        IntMatrix M(2, IntVec(vectors.size()));
        for (size_t c = 0; c < perm.size(); ++c) {
            if (vectors[perm[c]].size() != 2) throw DomainError("expected plane vectors");
            M[0][c] = vectors[perm[c]][0];
            M[1][c] = vectors[perm[c]][1];
        }
        IntMatrix H = from_z(hnf_rows(to_z(M)));
        if (!best || H < *best) best = H;
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<IntVec> out;
    if (!best) return out;
    for (size_t c = 0; c < vectors.size(); ++c) {
        IntVec v;
        for (const auto& row : *best) v.push_back(row[c]);
        v.resize(2, 0);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

NewtonPolytopeData wpp_fan_polytope(long long w0, long long w1, long long w2) {
    if (w0 <= 0 || w1 <= 0 || w2 <= 0) throw DomainError("weights must be positive");
    if (std::gcd(w0, w1) != 1 || std::gcd(w0, w2) != 1 || std::gcd(w1, w2) != 1)
        throw DomainError("weights are not pairwise coprime");
    ZMatrix col = to_z({{w0}, {w1}, {w2}});
    SmithForm sf = smith_form(col, 3, 1);
    std::vector<IntVec> verts(3, IntVec(2));
    for (size_t i = 0; i < 3; ++i)
        for (size_t r = 0; r < 2; ++r) verts[i][r] = sf.U[r + 1][i].get_si();
    for (const auto& v : verts)
        if (gcd_of(v) != 1) throw DomainError("degenerate weights: a vertex is not primitive");
    NewtonPolytopeData out;
    out.rank = 2;
    out.dimension = 2;
    // Hermite normal form of the ordered columns keeps v_i aligned with w_i.
    IntMatrix M(2, IntVec(3));
    for (size_t i = 0; i < 3; ++i) {
        M[0][i] = verts[i][0];
        M[1][i] = verts[i][1];
    }
    IntMatrix H = from_z(hnf_rows(to_z(M)));
    for (size_t i = 0; i < 3; ++i) out.vertices.push_back({H[0][i], H[1][i]});
    return out;
}

bool is_markov(const MarkovTriple& t) {
    if (t[0] <= 0 || t[1] <= 0 || t[2] <= 0) return false;
    return t[0] * t[0] + t[1] * t[1] + t[2] * t[2] == 3 * t[0] * t[1] * t[2];
}

MarkovTriple markov_mutate(const MarkovTriple& t, int slot) {
    if (slot < 0 || slot > 2) throw DomainError("slot must be 0, 1 or 2");
    if (!is_markov(t)) throw DomainError("input is not a Markov triple");
    Integer p = 3;
    for (int i = 0; i < 3; ++i)
        if (i != slot) p *= t[static_cast<size_t>(i)];
    MarkovTriple out = t;
    out[static_cast<size_t>(slot)] = p - t[static_cast<size_t>(slot)];
    return out;
}

std::vector<MarkovTriple> markov_tree(int depth) {
    if (depth < 0) throw DomainError("depth must be nonnegative");
    auto sorted = [](MarkovTriple t) {
        std::sort(t.begin(), t.end());
        return t;
    };
    const MarkovTriple root{Integer(1), Integer(1), Integer(1)};
    std::set<MarkovTriple> seen{root};
    std::vector<MarkovTriple> frontier{root};
    for (int level = 0; level < depth; ++level) {
        std::vector<MarkovTriple> next;
        for (const auto& t : frontier)
            for (int slot = 0; slot < 3; ++slot) {
                MarkovTriple m = markov_mutate(t, slot);
                if (seen.insert(sorted(m)).second) next.push_back(m);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace lgforge
