#include "cpd/kernels.hpp"

namespace cpd::kernels {

void unfold2_serial(const Tensor3& t, Matrix& out) {
    const Index i1 = t.dim(1), i2 = t.dim(2), i3 = t.dim(3);
    out.resize(i2, i1 * i3);
    for (Index l = 0; l < i3; ++l)
        for (Index j = 0; j < i2; ++j)
            for (Index i = 0; i < i1; ++i)
                out(j, l * i1 + i) = t(i, j, l);
}

void unfold2_parallel(const Tensor3& t, Matrix& out) {
    const Index i1 = t.dim(1), i2 = t.dim(2), i3 = t.dim(3);
    out.resize(i2, i1 * i3);
    const double* src = t.data();
#pragma omp parallel for schedule(static)
    for (Index l = 0; l < i3; ++l) {
        const double* slice = src + l * i1 * i2;
        for (Index j = 0; j < i2; ++j)
            for (Index i = 0; i < i1; ++i)
                out(j, l * i1 + i) = slice[i + j * i1];
    }
}

void unfold3_serial(const Tensor3& t, Matrix& out) {
    const Index i1 = t.dim(1), i2 = t.dim(2), i3 = t.dim(3);
    out.resize(i3, i1 * i2);
    for (Index k = 0; k < i3; ++k)
        for (Index j = 0; j < i2; ++j)
            for (Index i = 0; i < i1; ++i)
                out(k, j * i1 + i) = t(i, j, k);
}

void unfold3_parallel(const Tensor3& t, Matrix& out) {
    const Index i1 = t.dim(1), i2 = t.dim(2), i3 = t.dim(3);
    out.resize(i3, i1 * i2);
    const double* src = t.data();
#pragma omp parallel for schedule(static)
    for (Index k = 0; k < i3; ++k) {
        const double* slice = src + k * i1 * i2;
        for (Index c = 0; c < i1 * i2; ++c) out(k, c) = slice[c];
    }
}

void refold2_serial(const Matrix& m, Tensor3& out) {
    const Index i1 = out.dim(1), i2 = out.dim(2), i3 = out.dim(3);
    for (Index l = 0; l < i3; ++l)
        for (Index j = 0; j < i2; ++j)
            for (Index i = 0; i < i1; ++i)
                out(i, j, l) = m(j, l * i1 + i);
}

void refold2_parallel(const Matrix& m, Tensor3& out) {
    const Index i1 = out.dim(1), i2 = out.dim(2), i3 = out.dim(3);
    double* dst = out.data();
#pragma omp parallel for schedule(static)
    for (Index l = 0; l < i3; ++l) {
        double* slice = dst + l * i1 * i2;
        for (Index j = 0; j < i2; ++j)
            for (Index i = 0; i < i1; ++i)
                slice[i + j * i1] = m(j, l * i1 + i);
    }
}

void refold3_serial(const Matrix& m, Tensor3& out) {
    const Index i1 = out.dim(1), i2 = out.dim(2), i3 = out.dim(3);
    for (Index k = 0; k < i3; ++k)
        for (Index j = 0; j < i2; ++j)
            for (Index i = 0; i < i1; ++i)
                out(i, j, k) = m(k, j * i1 + i);
}

void refold3_parallel(const Matrix& m, Tensor3& out) {
    const Index i1 = out.dim(1), i2 = out.dim(2), i3 = out.dim(3);
    double* dst = out.data();
#pragma omp parallel for schedule(static)
    for (Index k = 0; k < i3; ++k) {
        double* slice = dst + k * i1 * i2;
        for (Index c = 0; c < i1 * i2; ++c) slice[c] = m(k, c);
    }
}

void from_cpd_serial(const Matrix& a, const Matrix& b, const Matrix& c, Tensor3& out) {
    const Index i1 = a.rows(), i2 = b.rows(), i3 = c.rows(), r = a.cols();
    for (Index k = 0; k < i3; ++k)
        for (Index j = 0; j < i2; ++j)
            for (Index i = 0; i < i1; ++i) {
                double v = 0.0;
                for (Index q = 0; q < r; ++q) v += a(i, q) * b(j, q) * c(k, q);
                out(i, j, k) = v;
            }
}

void from_cpd_parallel(const Matrix& a, const Matrix& b, const Matrix& c, Tensor3& out) {
    const Index i1 = a.rows(), i2 = b.rows(), i3 = c.rows(), r = a.cols();
    double* dst = out.data();
#pragma omp parallel for collapse(2) schedule(static)
    for (Index k = 0; k < i3; ++k)
        for (Index j = 0; j < i2; ++j) {
            // fiber t(:,j,k) = A * (b_j .* c_k)
            Vector w(r);
            for (Index q = 0; q < r; ++q) w(q) = b(j, q) * c(k, q);
            Eigen::Map<Vector>(dst + (k * i2 + j) * i1, i1).noalias() = a * w;
        }
}

void khatri_rao_serial(const Matrix& x, const Matrix& y, Matrix& out) {
    const Index p = x.rows(), q = y.rows(), r = x.cols();
    out.resize(p * q, r);
    for (Index c = 0; c < r; ++c)
        for (Index i = 0; i < p; ++i)
            for (Index j = 0; j < q; ++j)
                out(i * q + j, c) = x(i, c) * y(j, c);
}

void khatri_rao_parallel(const Matrix& x, const Matrix& y, Matrix& out) {
    const Index p = x.rows(), q = y.rows(), r = x.cols();
    out.resize(p * q, r);
#pragma omp parallel for schedule(static)
    for (Index c = 0; c < r; ++c)
        for (Index i = 0; i < p; ++i)
            out.col(c).segment(i * q, q) = x(i, c) * y.col(c);
}

}  // namespace cpd::kernels
