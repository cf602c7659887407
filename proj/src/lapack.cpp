#include "cpd/lapack.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace cpd::lapack {

QzFactorization gges(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("gges: matrices must be square and of equal size");
    const lapack_int n = static_cast<lapack_int>(a.rows());

    QzFactorization f;
    f.s = a;
    f.t = b;
    f.q.resize(n, n);
    f.z.resize(n, n);
    f.alphar.resize(n);
    f.alphai.resize(n);
    f.beta.resize(n);

    lapack_int sdim = 0;
    lapack_int info = LAPACKE_dgges(
        LAPACK_COL_MAJOR, 'V', 'V', 'N', nullptr, n, f.s.data(), n, f.t.data(), n,
        &sdim, f.alphar.data(), f.alphai.data(), f.beta.data(), f.q.data(), n,
        f.z.data(), n);
    if (info != 0)
        throw std::runtime_error("dgges failed, info = " + std::to_string(info));
    return f;
}

void tgsen(QzFactorization& f, const std::vector<int>& select) {
    const lapack_int n = static_cast<lapack_int>(f.s.rows());
    if (static_cast<lapack_int>(select.size()) != n)
        throw std::invalid_argument("tgsen: select length must equal pencil size");

    std::vector<lapack_logical> sel(select.begin(), select.end());
    lapack_int m = 0;
    double pl = 0.0, pr = 0.0;
    double dif[2] = {0.0, 0.0};
    lapack_int info = LAPACKE_dtgsen(
        LAPACK_COL_MAJOR, 0, 1, 1, sel.data(), n, f.s.data(), n, f.t.data(), n,
        f.alphar.data(), f.alphai.data(), f.beta.data(), f.q.data(), n,
        f.z.data(), n, &m, &pl, &pr, dif);
    if (info != 0)
        throw std::runtime_error("dtgsen failed, info = " + std::to_string(info));
}

Matrix tgevc_right(const QzFactorization& f) {
    const lapack_int n = static_cast<lapack_int>(f.s.rows());
    Matrix vr = f.z;  // howmny = 'B' back-transforms by the content of vr
    lapack_int m = 0;
    lapack_int info = LAPACKE_dtgevc(
        LAPACK_COL_MAJOR, 'R', 'B', nullptr, n, f.s.data(), n, f.t.data(), n,
        nullptr, n, vr.data(), n, n, &m);
    if (info != 0)
        throw std::runtime_error("dtgevc failed, info = " + std::to_string(info));
    return vr;
}

}  // namespace cpd::lapack
