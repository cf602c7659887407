#include "cpd/gevd.hpp"

#include "cpd/gesd.hpp"
#include "cpd/lapack.hpp"
#include "cpd/mlsvd.hpp"
#include "cpd/tensor.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace cpd {

GevdResult gevd(const Tensor3& t, Index rank) {
    if (rank < 1) throw std::invalid_argument("gevd: rank must be at least 1");
    if (rank > std::min(t.dim(1), t.dim(2)))
        throw std::invalid_argument("gevd: rank exceeds min(I1, I2)");

    const Index k = std::min(t.dim(3), rank);
    Mlsvd m = mlsvd_truncated(t, rank, rank, k);

    GevdResult out;
    Cpd core_cpd;
    if (rank == 1) {
        core_cpd.a = Matrix::Constant(1, 1, m.core(0, 0, 0));
        core_cpd.b = Matrix::Constant(1, 1, 1.0);
        core_cpd.c = Matrix::Constant(1, 1, 1.0);
        out.cpd = expand(m, core_cpd);
        return out;
    }
    if (k < 2)
        throw std::invalid_argument("gevd: needs at least two core slices");

    lapack::QzFactorization f =
        lapack::gges(m.core.frontal_slice(0), m.core.frontal_slice(1));
    Matrix eigvecs = lapack::tgevc_right(f);
    for (Index j = 0; j < f.alphai.size(); ++j)
        if (f.alphai(j) != 0.0) out.complex_pairs = true;

    {
        Eigen::BDCSVD<Matrix> svd(eigvecs);
        const Vector& sv = svd.singularValues();
        out.eigvec_condition =
            sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                    : std::numeric_limits<double>::infinity();
        out.ill_conditioned = out.eigvec_condition > 1e12;
    }

    core_cpd.b = eigvecs;
    // unfold(core, 2) = B * W^T with W = khatri_rao(C, A)
    Matrix w = Eigen::ColPivHouseholderQR<Matrix>(eigvecs)
                   .solve(Matrix(unfold(m.core, 2)))
                   .transpose();
    core_cpd.a.resize(rank, rank);
    core_cpd.c.resize(k, rank);
    for (Index r = 0; r < rank; ++r) {
        Eigen::Map<const Matrix> comp(w.col(r).data(), rank, k);
        Rank1Result r1 = rank1_approx_matrix(comp);
        core_cpd.a.col(r) = r1.triple.sigma * r1.triple.u;
        core_cpd.c.col(r) = r1.triple.v;
    }
    out.cpd = expand(m, core_cpd);
    return out;
}

}  // namespace cpd
