#pragma once

#include "cpd/types.hpp"

namespace cpd::kernels {

// Raw data-parallel loops behind the Tensor3 operations. Each kernel has a
// serial reference used by the tests and an OpenMP variant used in
// production; bench/ compares the two.

// Mode-2 unfolding M[j, l*I1 + i] = t(i, j, l).
void unfold2_serial(const Tensor3& t, Matrix& out);
void unfold2_parallel(const Tensor3& t, Matrix& out);

// Mode-3 unfolding M[k, j*I1 + i] = t(i, j, k).
void unfold3_serial(const Tensor3& t, Matrix& out);
void unfold3_parallel(const Tensor3& t, Matrix& out);

// Inverse of the mode-m unfolding (m = 2, 3).
void refold2_serial(const Matrix& m, Tensor3& out);
void refold2_parallel(const Matrix& m, Tensor3& out);
void refold3_serial(const Matrix& m, Tensor3& out);
void refold3_parallel(const Matrix& m, Tensor3& out);

// Dense evaluation t(i,j,k) = sum_r a(i,r) b(j,r) c(k,r).
void from_cpd_serial(const Matrix& a, const Matrix& b, const Matrix& c, Tensor3& out);
void from_cpd_parallel(const Matrix& a, const Matrix& b, const Matrix& c, Tensor3& out);

// Column-wise Kronecker product, x index slowest:
// out[(p*rows(y) + q), r] = x(p, r) * y(q, r).
void khatri_rao_serial(const Matrix& x, const Matrix& y, Matrix& out);
void khatri_rao_parallel(const Matrix& x, const Matrix& y, Matrix& out);

}  // namespace cpd::kernels
