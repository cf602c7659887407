#include "cpd/tensor.hpp"

#include "cpd/kernels.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace cpd {

void validate_cpd(const Cpd& f) {
    const Index r = f.a.cols();
    if (f.b.cols() != r || f.c.cols() != r)
        throw std::invalid_argument("Cpd: factors must have the same column count");
    for (const Matrix* m : {&f.a, &f.b, &f.c}) {
        if (!m->allFinite())
            throw std::invalid_argument("Cpd: factor entries must be finite");
        for (Index c = 0; c < r; ++c)
            if (m->col(c).norm() == 0.0)
                throw std::invalid_argument("Cpd: factor column is zero");
    }
}

Matrix unfold(const Tensor3& t, int mode) {
    switch (mode) {
        case 1:
            // storage is i-fastest, so this is a reshape
            return Eigen::Map<const Matrix>(t.data(), t.dim(1), t.dim(2) * t.dim(3));
        case 2: {
            Matrix out;
            kernels::unfold2_parallel(t, out);
            return out;
        }
        case 3: {
            Matrix out;
            kernels::unfold3_parallel(t, out);
            return out;
        }
        default:
            throw std::invalid_argument("unfold: mode must be 1, 2 or 3");
    }
}

Tensor3 refold(const Matrix& m, int mode, Index i1, Index i2, Index i3) {
    switch (mode) {
        case 1: {
            if (m.rows() != i1 || m.cols() != i2 * i3)
                throw std::invalid_argument("refold: shape mismatch");
            std::vector<double> data(m.data(), m.data() + m.size());
            return Tensor3(i1, i2, i3, std::move(data));
        }
        case 2: {
            if (m.rows() != i2 || m.cols() != i1 * i3)
                throw std::invalid_argument("refold: shape mismatch");
            Tensor3 out(i1, i2, i3);
            kernels::refold2_parallel(m, out);
            return out;
        }
        case 3: {
            if (m.rows() != i3 || m.cols() != i1 * i2)
                throw std::invalid_argument("refold: shape mismatch");
            Tensor3 out(i1, i2, i3);
            kernels::refold3_parallel(m, out);
            return out;
        }
        default:
            throw std::invalid_argument("refold: mode must be 1, 2 or 3");
    }
}

Tensor3 mode_product(const Tensor3& t, const Matrix& m, int mode) {
    if (mode < 1 || mode > 3)
        throw std::invalid_argument("mode_product: mode must be 1, 2 or 3");
    if (m.cols() != t.dim(mode))
        throw std::invalid_argument("mode_product: matrix columns must match tensor mode dim");
    Matrix prod = m * unfold(t, mode);
    Index d1 = t.dim(1), d2 = t.dim(2), d3 = t.dim(3);
    if (mode == 1) d1 = m.rows();
    if (mode == 2) d2 = m.rows();
    if (mode == 3) d3 = m.rows();
    return refold(prod, mode, d1, d2, d3);
}

Matrix khatri_rao(const Matrix& x, const Matrix& y) {
    if (x.cols() != y.cols())
        throw std::invalid_argument("khatri_rao: column counts must match");
    Matrix out;
    kernels::khatri_rao_parallel(x, y, out);
    return out;
}

Tensor3 from_cpd(const Cpd& f) {
    validate_cpd(f);
    Tensor3 out(f.a.rows(), f.b.rows(), f.c.rows());
    kernels::from_cpd_parallel(f.a, f.b, f.c, out);
    return out;
}

double frob_norm(const Tensor3& t) {
    return Eigen::Map<const Vector>(t.data(), t.size()).norm();
}

Rank1Result rank1_approx_matrix(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw std::invalid_argument("rank1_approx_matrix: empty matrix");
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Rank1Result res;
    res.triple.u = svd.matrixU().col(0);
    res.triple.v = svd.matrixV().col(0);
    res.triple.sigma = svd.singularValues()(0);
    res.sigma2 = svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
    return res;
}

}  // namespace cpd
