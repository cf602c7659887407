#include "cpd/synth.hpp"

#include "cpd/metrics.hpp"
#include "cpd/rng.hpp"
#include "cpd/tensor.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace cpd {

namespace {

Matrix gen_correlated(Index rows, Index cols, double angle_degrees, std::mt19937_64& rng) {
    if (angle_degrees <= 0.0 || angle_degrees >= 90.0)
        throw std::invalid_argument("gen_factor: correlated angle must lie in (0, 90) degrees");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Matrix m(rows, cols);
    Vector first(rows);
    for (Index i = 0; i < rows; ++i) first(i) = unif(rng);
    m.col(0) = first;
    const Vector a1 = first.normalized();

    const double c = std::cos(angle_degrees * M_PI / 180.0);
    const double s = std::sin(angle_degrees * M_PI / 180.0);
    for (Index r = 1; r < cols; ++r) {
        // random unit direction orthogonal to a1; redraw on degeneracy
        Vector u(rows);
        double nrm = 0.0;
        do {
            for (Index i = 0; i < rows; ++i) u(i) = gauss(rng);
            u -= a1.dot(u) * a1;
            nrm = u.norm();
        } while (nrm < 1e-12);
        m.col(r) = c * a1 + (s / nrm) * u;
    }
    return m;
}

}  // namespace

Matrix gen_factor(const FactorSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1)
        throw std::invalid_argument("gen_factor: dims must be positive");
    auto rng = make_rng(spec.seed);
    Matrix m(spec.rows, spec.cols);
    switch (spec.dist) {
        case FactorDist::StandardNormal: {
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (Index c = 0; c < spec.cols; ++c)
                for (Index i = 0; i < spec.rows; ++i) m(i, c) = gauss(rng);
            return m;
        }
        case FactorDist::Uniform01: {
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (Index c = 0; c < spec.cols; ++c)
                for (Index i = 0; i < spec.rows; ++i) m(i, c) = unif(rng);
            return m;
        }
        case FactorDist::Correlated:
            return gen_correlated(spec.rows, spec.cols, spec.angle_degrees, rng);
    }
    throw std::invalid_argument("gen_factor: unknown distribution");
}

Problem gen_problem(Index i1, Index i2, Index i3, Index rank, FactorDist dist_a,
                    FactorDist dist_b, FactorDist dist_c,
                    std::optional<double> snr_db_target, uint64_t seed,
                    double angle_degrees) {
    Problem p;
    constexpr int kMaxRedraws = 16;
    for (int attempt = 0;; ++attempt) {
        const uint64_t base = derive_seed(seed, static_cast<uint64_t>(attempt));
        p.truth.a = gen_factor({dist_a, i1, rank, angle_degrees, derive_seed(base, 1)});
        p.truth.b = gen_factor({dist_b, i2, rank, angle_degrees, derive_seed(base, 2)});
        p.truth.c = gen_factor({dist_c, i3, rank, angle_degrees, derive_seed(base, 3)});

        Eigen::BDCSVD<Matrix> svd(khatri_rao(p.truth.c, p.truth.a));
        const Vector& sv = svd.singularValues();
        if (sv(sv.size() - 1) > 1e-8 * sv(0)) break;
        p.regen_count = attempt + 1;
        if (attempt + 1 >= kMaxRedraws)
            throw std::runtime_error("gen_problem: Khatri-Rao factor stayed rank-deficient");
    }

    p.noiseless = from_cpd(p.truth);
    p.noisy = snr_db_target ? add_noise(p.noiseless, *snr_db_target, derive_seed(seed, 0xabcdULL))
                            : p.noiseless;
    return p;
}

}  // namespace cpd
