/*
 * intlin.cpp
 * ----------
 * Elementary-operation implementations of Smith and Hermite normal forms.
 */
#include "lgforge/intlin.hpp"

#include "lgforge/errors.hpp"

namespace lgforge {

ZMatrix to_z(const IntMatrix& m) {
    ZMatrix out;
    for (const auto& row : m) {
        std::vector<Integer> r;
        for (long long x : row) r.emplace_back(static_cast<long>(x));
        out.push_back(r);
    }
    return out;
}

IntMatrix from_z(const ZMatrix& m) {
    IntMatrix out;
    for (const auto& row : m) {
        IntVec r;
        for (const auto& x : row) {
            if (!x.fits_slong_p()) throw DomainError("integer overflow in lattice computation");
            r.push_back(x.get_si());
        }
        out.push_back(r);
    }
    return out;
}

ZMatrix transpose(const ZMatrix& m) {
    if (m.empty()) return {};
    ZMatrix t(m[0].size(), std::vector<Integer>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

ZMatrix mat_mul(const ZMatrix& a, const ZMatrix& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    ZMatrix c(n, std::vector<Integer>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t)
            if (a[i][t] != 0)
                for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    return c;
}

namespace {

ZMatrix identity(size_t n) {
    ZMatrix I(n, std::vector<Integer>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

void swap_cols(ZMatrix& m, size_t a, size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

// row_i -= q * row_t
void row_axpy(ZMatrix& m, size_t i, size_t t, const Integer& q) {
    for (size_t j = 0; j < m[i].size(); ++j) m[i][j] -= q * m[t][j];
}

void col_axpy(ZMatrix& m, size_t j, size_t t, const Integer& q) {
    for (auto& row : m) row[j] -= q * row[t];
}

}  // namespace

SmithForm smith_form(const ZMatrix& A, size_t rows, size_t cols) {
    SmithForm sf;
    sf.S = A;
    if (sf.S.empty()) sf.S.assign(rows, std::vector<Integer>(cols, 0));
    sf.U = identity(rows);
    sf.W = identity(cols);
    ZMatrix& S = sf.S;
    size_t t = 0;
    while (t < rows && t < cols) {
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (S[i][j] != 0 && (pi == rows || abs(S[i][j]) < abs(S[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(S[t], S[pi]);
        std::swap(sf.U[t], sf.U[pi]);
        swap_cols(S, t, pj);
        swap_cols(sf.W, t, pj);
        while (true) {
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (S[i][t] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), S[i][t].get_mpz_t(), S[t][t].get_mpz_t());
                row_axpy(S, i, t, q);
                row_axpy(sf.U, i, t, q);
                if (S[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (S[t][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), S[t][j].get_mpz_t(), S[t][t].get_mpz_t());
                col_axpy(S, j, t, q);
                col_axpy(sf.W, j, t, q);
                if (S[t][j] != 0) clean = false;
            }
            if (clean) break;
            // Bring the smallest remaining entry of row/column t into the pivot.
            size_t bi = t, bj = t;
            for (size_t i = t + 1; i < rows; ++i)
                if (S[i][t] != 0 && abs(S[i][t]) < abs(S[bi][bj])) { bi = i; bj = t; }
            for (size_t j = t + 1; j < cols; ++j)
                if (S[t][j] != 0 && abs(S[t][j]) < abs(S[bi][bj])) { bi = t; bj = j; }
            if (bi != t) {
                std::swap(S[t], S[bi]);
                std::swap(sf.U[t], sf.U[bi]);
            }
            if (bj != t) {
                swap_cols(S, t, bj);
                swap_cols(sf.W, t, bj);
            }
        }
        if (S[t][t] < 0) {
            for (auto& x : S[t]) x = -x;
            for (auto& x : sf.U[t]) x = -x;
        }
        ++t;
    }
    sf.rank = t;
    return sf;
}

ZMatrix hnf_rows(ZMatrix A) {
    if (A.empty()) return A;
    size_t rows = A.size(), cols = A[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
            size_t best = rows;
            for (size_t i = r; i < rows; ++i)
                if (A[i][c] != 0 && (best == rows || abs(A[i][c]) < abs(A[best][c]))) best = i;
            if (best == rows) break;
            std::swap(A[r], A[best]);
            bool done = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (A[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][c].get_mpz_t(), A[r][c].get_mpz_t());
                row_axpy(A, i, r, q);
                if (A[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (A[r][c] == 0) continue;
        if (A[r][c] < 0)
            for (auto& x : A[r]) x = -x;
        for (size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), A[i][c].get_mpz_t(), A[r][c].get_mpz_t());
            row_axpy(A, i, r, q);
        }
        ++r;
    }
    A.resize(r);
    return A;
}

ZMatrix kernel_basis(const ZMatrix& A, size_t cols) {
    size_t rows = A.size();
    SmithForm sf = smith_form(A, rows, cols);
    ZMatrix basis;
    for (size_t j = sf.rank; j < cols; ++j) {
        std::vector<Integer> v(cols);
        for (size_t i = 0; i < cols; ++i) v[i] = sf.W[i][j];
        basis.push_back(v);
    }
    return hnf_rows(basis);
}

}  // namespace lgforge
