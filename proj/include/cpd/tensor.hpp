#pragma once

#include "cpd/types.hpp"

namespace cpd {

/// Mode-i unfolding with fixed column order: the output column holding
/// fiber t(..., p, ..., q, ...) places the lower remaining mode fastest.
/// Mode 1 gives I1 x (I2*I3) with column (j, l) at position l*I2 + j,
/// mode 2 gives I2 x (I1*I3), mode 3 gives I3 x (I1*I2).
Matrix unfold(const Tensor3& t, int mode);

/// Inverse of unfold for the given original dims.
Tensor3 refold(const Matrix& m, int mode, Index i1, Index i2, Index i3);

/// Mode-i product: every mode-i fiber is multiplied by m, i.e.
/// unfold(result, mode) = m * unfold(t, mode).
Tensor3 mode_product(const Tensor3& t, const Matrix& m, int mode);

/// Column-wise Kronecker product with the x index slowest, so that
/// unfold(from_cpd({A,B,C}), 2) == B * khatri_rao(C, A)^T.
Matrix khatri_rao(const Matrix& x, const Matrix& y);

/// Dense evaluation of a CPD: entry (i,j,k) = sum_r A(i,r) B(j,r) C(k,r).
Tensor3 from_cpd(const Cpd& f);

double frob_norm(const Tensor3& t);

struct Rank1Approx {
    Vector u;       // unit left vector
    double sigma;   // leading singular value
    Vector v;       // unit right vector
};

/// Leading singular triple of m, the minimizer of |m - sigma*u*v^T|_F,
/// together with the second singular value for rank-1 diagnostics.
struct Rank1Result {
    Rank1Approx triple;
    double sigma2;  // second singular value (0 when min dim is 1)
};
Rank1Result rank1_approx_matrix(const Matrix& m);

}  // namespace cpd
