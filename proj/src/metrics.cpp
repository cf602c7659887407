#include "cpd/metrics.hpp"

#include "cpd/assignment.hpp"
#include "cpd/rng.hpp"
#include "cpd/tensor.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace cpd {

namespace {

double abs_cos_angle(const Vector& x, const Vector& y) {
    const double nx = x.norm(), ny = y.norm();
    if (nx == 0.0 || ny == 0.0) return 0.0;
    return std::min(1.0, std::abs(x.dot(y)) / (nx * ny));
}

}  // namespace

CpdErr cpderr(const Cpd& truth, const Cpd& est) {
    const Index r = truth.rank();
    if (est.rank() != r)
        throw std::invalid_argument("cpderr: rank mismatch");
    if (truth.a.rows() != est.a.rows() || truth.b.rows() != est.b.rows() ||
        truth.c.rows() != est.c.rows())
        throw std::invalid_argument("cpderr: factor dims mismatch");

    const Matrix* tf[3] = {&truth.a, &truth.b, &truth.c};
    const Matrix* ef[3] = {&est.a, &est.b, &est.c};

    Matrix cost = Matrix::Zero(r, r);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < r; ++j)
            for (int f = 0; f < 3; ++f)
                cost(i, j) += 1.0 - abs_cos_angle(tf[f]->col(i), ef[f]->col(j));

    CpdErr out;
    out.permutation = solve_assignment(cost);

    for (int f = 0; f < 3; ++f) {
        const Matrix& t = *tf[f];
        const Matrix& e = *ef[f];
        out.scales[f].resize(static_cast<size_t>(r));
        double res2 = 0.0;
        for (Index col = 0; col < r; ++col) {
            const Vector& tc = t.col(col);
            const Vector ec = e.col(out.permutation[static_cast<size_t>(col)]);
            const double denom = ec.squaredNorm();
            const double s = denom > 0.0 ? tc.dot(ec) / denom : 0.0;
            out.scales[f][static_cast<size_t>(col)] = s;
            res2 += (tc - s * ec).squaredNorm();
        }
        out.factor_errors[static_cast<size_t>(f)] = std::sqrt(res2) / t.norm();
    }
    out.max_error = std::max({out.factor_errors[0], out.factor_errors[1], out.factor_errors[2]});
    return out;
}

double snr_db(const Tensor3& signal, const Tensor3& noise) {
    if (signal.dims() != noise.dims())
        throw std::invalid_argument("snr_db: dims mismatch");
    const double nn = frob_norm(noise);
    if (nn == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(frob_norm(signal) / nn);
}

Tensor3 add_noise(const Tensor3& t, double target_snr_db, uint64_t seed) {
    if (!std::isfinite(target_snr_db))
        throw std::invalid_argument("add_noise: target must be finite");
    const Index i1 = t.dim(1), i2 = t.dim(2), i3 = t.dim(3);
    Tensor3 noise(i1, i2, i3);
    // one substream per frontal slice keeps the draw order fixed
    for (Index k = 0; k < i3; ++k) {
        auto rng = make_rng(seed, static_cast<uint64_t>(k));
        std::normal_distribution<double> gauss(0.0, 1.0);
        double* slab = noise.data() + k * i1 * i2;
        for (Index c = 0; c < i1 * i2; ++c) slab[c] = gauss(rng);
    }
    const double nn = frob_norm(noise);
    const double target_norm = frob_norm(t) * std::pow(10.0, -target_snr_db / 20.0);
    const double scale = nn > 0.0 ? target_norm / nn : 0.0;

    Tensor3 out = t;
    double* dst = out.data();
    const double* src = noise.data();
#pragma omp parallel for schedule(static)
    for (Index idx = 0; idx < out.size(); ++idx) dst[idx] += scale * src[idx];
    return out;
}

std::vector<double> principal_angles(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows())
        throw std::invalid_argument("principal_angles: row dims mismatch");
    auto orthonormalize = [](const Matrix& m) {
        Eigen::ColPivHouseholderQR<Matrix> qr(m);
        if (qr.rank() < m.cols())
            throw std::invalid_argument("principal_angles: rank-deficient input");
        Matrix q = Matrix::Identity(m.rows(), m.cols());
        q = Eigen::HouseholderQR<Matrix>(m).householderQ() * q;
        return q;
    };
    Matrix qx = orthonormalize(x);
    Matrix qy = orthonormalize(y);
    Eigen::BDCSVD<Matrix> svd(qx.transpose() * qy);
    const Vector& sv = svd.singularValues();
    std::vector<double> angles(static_cast<size_t>(sv.size()));
    for (Index i = 0; i < sv.size(); ++i)
        angles[static_cast<size_t>(i)] = std::acos(std::min(1.0, std::max(-1.0, sv(i))));
    std::sort(angles.begin(), angles.end(), std::greater<double>());
    return angles;
}

}  // namespace cpd
