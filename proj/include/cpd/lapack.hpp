#pragma once

#include "cpd/types.hpp"

#include <vector>

namespace cpd::lapack {

/// Generalized real Schur form of a matrix pair:
///   a = q * s * z^T,  b = q * t * z^T
/// with q, z orthogonal and (s, t) quasi-upper-triangular. The arrays
/// (alphar, alphai, beta) hold the generalized eigenvalues as returned by
/// the backend; complex-conjugate pairs occupy adjacent positions with
/// alphai = +x, -x.
struct QzFactorization {
    Matrix s, t, q, z;
    Vector alphar, alphai, beta;
};

QzFactorization gges(const Matrix& a, const Matrix& b);

/// Reorder the factorization so the eigenvalues with select[j] != 0 occupy
/// the leading diagonal positions. Both members of a 2x2 block must carry
/// the same select flag. Throws on backend reordering failure.
void tgsen(QzFactorization& f, const std::vector<int>& select);

/// Right generalized eigenvectors of the original pencil, computed by
/// back-substitution on the quasi-triangular pair and back-transformed by z.
/// For complex pairs, adjacent columns hold real and imaginary parts.
Matrix tgevc_right(const QzFactorization& f);

}  // namespace cpd::lapack
