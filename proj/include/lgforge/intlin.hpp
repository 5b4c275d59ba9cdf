/*
 * intlin.hpp
 * ----------
 * Integer linear algebra on small dense matrices: Smith normal form with
 * transforms, lattice kernels and row Hermite normal form.
 */
#pragma once

#include <vector>

#include "lgforge/laurent.hpp"

namespace lgforge {

using ZMatrix = std::vector<std::vector<Integer>>;

ZMatrix to_z(const IntMatrix& m);
IntMatrix from_z(const ZMatrix& m);  // throws on overflow
ZMatrix transpose(const ZMatrix& m);
ZMatrix mat_mul(const ZMatrix& a, const ZMatrix& b);

// U * A * W = S with U, W unimodular and S diagonal (not necessarily with the
// divisibility chain); rank is the number of nonzero diagonal entries, which
// occupy positions 0..rank-1.
struct SmithForm {
    ZMatrix U, S, W;
    size_t rank = 0;
};
SmithForm smith_form(const ZMatrix& A, size_t rows, size_t cols);

// Basis of {k in Z^n : A k = 0} in row Hermite normal form (one basis vector per row).
ZMatrix kernel_basis(const ZMatrix& A, size_t cols);

// Row Hermite normal form of the lattice spanned by the rows; zero rows removed.
ZMatrix hnf_rows(ZMatrix A);

}  // namespace lgforge
