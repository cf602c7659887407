#include "cpd/bounds.hpp"

#include "cpd/rng.hpp"
#include "cpd/tensor.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace cpd {

namespace {

double sigma_min(const Matrix& m) {
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

PencilBoundRecord pencil_bound_record(const Tensor3& pencil, const Cpd& truth, int j) {
    if (pencil.dim(3) != 2)
        throw std::invalid_argument("pencil_bound: pencil must have two slices");
    if (truth.c.rows() != 2)
        throw std::invalid_argument("pencil_bound: truth.c must be the mixed 2-row factor");

    PencilBoundRecord rec;
    double max_c = 0.0;
    for (Index r = 0; r < truth.rank(); ++r)
        max_c = std::max(max_c, truth.c.col(r).norm());
    for (Index r = 0; r < truth.rank(); ++r)
        if (truth.c.col(r).norm() <= 1e-12 * max_c) return rec;  // not slice mix invertible

    Cpd scaled = rescale_bound_convention(truth);
    std::vector<GenEig> eigs;
    eigs.reserve(static_cast<size_t>(scaled.rank()));
    for (Index r = 0; r < scaled.rank(); ++r)
        eigs.push_back(make_gen_eig(scaled.c(0, r), scaled.c(1, r)));

    rec.delta = delta_j(eigs, j);
    rec.eps1 = eps1(scaled.a, scaled.b, rec.delta);
    rec.eps2_lower = eps2_lower(pencil);
    rec.eps_pencil = std::min(rec.eps1, rec.eps2_lower);
    return rec;
}

}  // namespace

Cpd rescale_bound_convention(const Cpd& f) {
    Cpd out = f;
    for (Index r = 0; r < f.rank(); ++r) {
        const double na = f.a.col(r).norm();
        const double nb = f.b.col(r).norm();
        const double nc = f.c.col(r).norm();
        const double m = na * nb * nc;
        if (m == 0.0) {
            out.a.col(r).setZero();
            out.b.col(r).setZero();
            if (nc > 0.0) out.c.col(r) /= nc;
            continue;
        }
        const double s = std::sqrt(m);
        out.a.col(r) *= s / na;
        out.b.col(r) *= s / nb;
        out.c.col(r) /= nc;
    }
    return out;
}

double delta_j(std::vector<GenEig> eigs, int j) {
    const int r = static_cast<int>(eigs.size());
    if (r == 0 || j < 1 || j > r) return 0.0;
    std::sort(eigs.begin(), eigs.end(),
              [](const GenEig& a, const GenEig& b) { return a.theta < b.theta; });
    std::vector<double> half_gaps(static_cast<size_t>(r));
    for (int p = 0; p < r; ++p)
        half_gaps[static_cast<size_t>(p)] =
            0.5 * chordal(eigs[static_cast<size_t>(p)],
                          eigs[static_cast<size_t>((p + 1) % r)]);
    std::nth_element(half_gaps.begin(), half_gaps.begin() + (j - 1), half_gaps.end(),
                     std::greater<double>());
    return half_gaps[static_cast<size_t>(j - 1)];
}

double eps1(const Matrix& a_factor, const Matrix& b_factor, double delta) {
    if (a_factor.cols() != b_factor.cols())
        throw std::invalid_argument("eps1: factor column counts differ");
    Matrix a = a_factor, b = b_factor;
    for (Index r = 0; r < a.cols(); ++r) {
        const double na = a.col(r).norm(), nb = b.col(r).norm();
        const double m = na * nb;
        if (m == 0.0) {
            a.col(r).setZero();
            b.col(r).setZero();
            continue;
        }
        const double s = std::sqrt(m);
        a.col(r) *= s / na;
        b.col(r) *= s / nb;
    }
    return sigma_min(a) * sigma_min(b) * delta;
}

double eps2_lower(const Tensor3& t) {
    if (t.dim(1) != t.dim(2))
        throw std::invalid_argument("eps2_lower: frontal slices must be square");
    double best = 0.0;
    for (Index k = 0; k < t.dim(3); ++k)
        best = std::max(best, sigma_min(t.frontal_slice(k)));
    return best;
}

double pencil_bound(const Tensor3& pencil, const Cpd& truth, int j) {
    return pencil_bound_record(pencil, truth, j).eps_pencil;
}

std::pair<std::vector<PencilBoundRecord>, double>
bound_for_unitary(const Tensor3& t, const Cpd& truth, int j, const Matrix& u) {
    const Index r = t.dim(1), k = t.dim(3);
    if (u.rows() != k || u.cols() != k)
        throw std::invalid_argument("bound_for_unitary: mixing must be K x K");
    Tensor3 mixed = mode_product(t, u, 3);
    Matrix c_mixed = u * truth.c;

    std::vector<PencilBoundRecord> records;
    double sumsq = 0.0;
    for (Index p = 0; 2 * p + 1 < k; ++p) {
        Tensor3 pencil(r, r, 2);
        Eigen::Map<Matrix>(pencil.data(), r, r) = mixed.frontal_slice(2 * p);
        Eigen::Map<Matrix>(pencil.data() + r * r, r, r) = mixed.frontal_slice(2 * p + 1);

        Cpd sub{truth.a, truth.b, c_mixed.middleRows(2 * p, 2)};
        PencilBoundRecord rec = pencil_bound_record(pencil, sub, j);
        rec.pencil_index = static_cast<int>(p);
        sumsq += rec.eps_pencil * rec.eps_pencil;
        records.push_back(rec);
    }
    return {records, std::sqrt(sumsq)};
}

BoundReport corollary_bound(const Tensor3& t, const Cpd& truth, int j,
                            int num_unitaries, uint64_t seed) {
    if (num_unitaries < 1)
        throw std::invalid_argument("corollary_bound: need at least one unitary");
    const Index k = t.dim(3);

    BoundReport report;
    report.j = j;
    for (int u_idx = 0; u_idx < num_unitaries; ++u_idx) {
        auto rng = make_rng(seed, static_cast<uint64_t>(u_idx));
        Matrix u = haar_orthogonal(k, rng);
        auto [records, aggregate] = bound_for_unitary(t, truth, j, u);
        report.unitary_aggregates.push_back(aggregate);
        for (auto& rec : records) {
            rec.unitary_index = u_idx;
            report.records.push_back(rec);
        }
        if (report.best_unitary_index < 0 || aggregate > report.eps_aggregate) {
            report.eps_aggregate = aggregate;
            report.best_unitary_index = u_idx;
            report.best_unitary = u;
            int best_p = 0;
            double best_val = -1.0;
            for (const auto& rec : records)
                if (rec.eps_pencil > best_val) {
                    best_val = rec.eps_pencil;
                    best_p = rec.pencil_index;
                }
            report.best_pencil_index = best_p;
        }
    }
    return report;
}

Matrix haar_orthogonal(Index n, std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("haar_orthogonal: n must be positive");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix& r = qr.matrixQR();
    for (Index j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

void write_bound_csv(const BoundReport& report, std::ostream& os) {
    os << "unitary_index,pencil_index,delta,eps1,eps2_lower,eps_pencil,eps_aggregate\n";
    for (const auto& rec : report.records) {
        os << rec.unitary_index << ',' << rec.pencil_index << ',' << rec.delta << ','
           << rec.eps1 << ',' << rec.eps2_lower << ',' << rec.eps_pencil << ','
           << report.unitary_aggregates[static_cast<size_t>(rec.unitary_index)] << '\n';
    }
}

}  // namespace cpd
