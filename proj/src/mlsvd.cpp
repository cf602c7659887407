#include "cpd/mlsvd.hpp"

#include "cpd/tensor.hpp"

#include <Eigen/SVD>

namespace cpd {

namespace {

void fix_column_signs(Matrix& v) {
    for (Index c = 0; c < v.cols(); ++c) {
        Index imax = 0;
        v.col(c).cwiseAbs().maxCoeff(&imax);
        if (v(imax, c) < 0.0) v.col(c) = -v.col(c);
    }
}

}  // namespace

Mlsvd mlsvd_truncated(const Tensor3& t, Index r1, Index r2, Index r3) {
    const std::array<Index, 3> target = {r1, r2, r3};
    for (int m = 0; m < 3; ++m) {
        if (target[m] < 1 || target[m] > t.dims()[m])
            throw std::invalid_argument("mlsvd_truncated: target exceeds dims");
    }

    Mlsvd out;
    Matrix* bases[3] = {&out.v1, &out.v2, &out.v3};
    for (int m = 0; m < 3; ++m) {
        Matrix unf = unfold(t, m + 1);
        Eigen::BDCSVD<Matrix> svd(unf, Eigen::ComputeThinU);
        *bases[m] = svd.matrixU().leftCols(target[m]);
        fix_column_signs(*bases[m]);
        out.singular_values[m] = svd.singularValues();
    }

    Tensor3 core = mode_product(t, out.v1.transpose(), 1);
    core = mode_product(core, out.v2.transpose(), 2);
    out.core = mode_product(core, out.v3.transpose(), 3);
    return out;
}

Cpd expand(const Mlsvd& m, const Cpd& core_cpd) {
    if (core_cpd.a.rows() != m.v1.cols() || core_cpd.b.rows() != m.v2.cols() ||
        core_cpd.c.rows() != m.v3.cols())
        throw std::invalid_argument("expand: core factor dims do not match bases");
    return Cpd{m.v1 * core_cpd.a, m.v2 * core_cpd.b, m.v3 * core_cpd.c};
}

}  // namespace cpd
