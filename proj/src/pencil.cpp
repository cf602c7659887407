#include "cpd/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cpd {

namespace {

constexpr double kSingularRelTol = 1e-12;
constexpr double kReconstructRelTol = 1e-10;

double theta_of(double a, double b) {
    double t = std::atan2(b, a);
    if (t < 0.0) t += M_PI;
    if (t >= M_PI) t = 0.0;
    return t;
}

std::vector<GenEig> eigs_from_factorization(const lapack::QzFactorization& f,
                                            double scale) {
    const Index n = f.s.rows();
    std::vector<GenEig> eigs(static_cast<size_t>(n));
    int block = 0;
    for (Index j = 0; j < n; ++j, ++block) {
        const bool complex_pair = f.alphai(j) != 0.0;
        const Index last = complex_pair ? j + 1 : j;
        for (Index m = j; m <= last; ++m) {
            GenEig e;
            e.block_id = block;
            e.is_complex = complex_pair;
            const double ar = f.alphar(m), ai = f.alphai(m), b = f.beta(m);
            const double nrm = std::sqrt(ar * ar + ai * ai + b * b);
            if (nrm <= kSingularRelTol * scale || nrm == 0.0) {
                e.singular = true;
            } else {
                double s = 1.0;
                if (!complex_pair) s = (ar != 0.0) ? std::copysign(1.0, ar)
                                                   : std::copysign(1.0, b);
                e.alpha = s * ar / nrm;
                e.alpha_im = s * ai / nrm;
                e.beta = s * b / nrm;
                e.theta = theta_of(e.alpha, e.beta);
            }
            eigs[static_cast<size_t>(m)] = e;
        }
        j = last;
    }
    return eigs;
}

void check_reconstruction(const Matrix& s1, const Matrix& s2,
                          const lapack::QzFactorization& f, double scale) {
    const double res = (s1 - f.q * f.s * f.z.transpose()).norm() +
                       (s2 - f.q * f.t * f.z.transpose()).norm();
    if (scale > 0.0 && res > kReconstructRelTol * scale)
        throw std::runtime_error("qz: reconstruction residual above tolerance");
}

// Sorted-by-theta order and the cyclic adjacent chordal gaps, with the gap
// between conjugate-pair members pinned to zero.
void sorted_cyclic_gaps(const std::vector<GenEig>& eigs, std::vector<int>& order,
                        std::vector<double>& gaps) {
    const int r = static_cast<int>(eigs.size());
    order.resize(static_cast<size_t>(r));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const GenEig &ea = eigs[static_cast<size_t>(a)], &eb = eigs[static_cast<size_t>(b)];
        if (ea.theta != eb.theta) return ea.theta < eb.theta;
        if (ea.block_id != eb.block_id) return ea.block_id < eb.block_id;
        return a < b;
    });
    gaps.resize(static_cast<size_t>(r));
    for (int p = 0; p < r; ++p) {
        const GenEig& u = eigs[static_cast<size_t>(order[static_cast<size_t>(p)])];
        const GenEig& v = eigs[static_cast<size_t>(order[static_cast<size_t>((p + 1) % r)])];
        const bool same_block = u.is_complex && u.block_id == v.block_id;
        gaps[static_cast<size_t>(p)] = same_block ? 0.0 : chordal(u, v);
    }
}

lapack::QzFactorization to_factorization(const PencilSchur& ps) {
    lapack::QzFactorization f;
    f.s = ps.x1;
    f.t = ps.x2;
    f.q = ps.q;
    f.z = ps.z;
    const Index n = ps.x1.rows();
    f.alphar.resize(n);
    f.alphai.resize(n);
    f.beta.resize(n);
    return f;
}

PencilSchur from_factorization(const lapack::QzFactorization& f, double scale) {
    PencilSchur ps;
    ps.q = f.q;
    ps.z = f.z;
    ps.x1 = f.s;
    ps.x2 = f.t;
    ps.scale = scale;
    ps.eigs = eigs_from_factorization(f, scale);
    return ps;
}

}  // namespace

GenEig make_gen_eig(double alpha, double beta) {
    const double nrm = std::hypot(alpha, beta);
    if (nrm == 0.0)
        throw std::invalid_argument("make_gen_eig: alpha and beta are both zero");
    const double s = (alpha != 0.0) ? std::copysign(1.0, alpha)
                                    : std::copysign(1.0, beta);
    GenEig e;
    e.alpha = s * alpha / nrm;
    e.beta = s * beta / nrm;
    e.theta = theta_of(e.alpha, e.beta);
    return e;
}

PencilSchur qz(const Matrix& s1, const Matrix& s2) {
    if (s1.rows() != s1.cols() || s2.rows() != s2.cols() || s1.rows() != s2.rows())
        throw std::invalid_argument("qz: slices must be square and of equal size");
    const double scale = s1.norm() + s2.norm();
    lapack::QzFactorization f = lapack::gges(s1, s2);
    check_reconstruction(s1, s2, f, scale);
    return from_factorization(f, scale);
}

PencilSchur reorder(const PencilSchur& ps, const std::vector<int>& select) {
    const Index n = ps.x1.rows();
    std::vector<int> mask(static_cast<size_t>(n), 0);
    for (int idx : select) {
        if (idx < 0 || idx >= n) throw std::invalid_argument("reorder: index out of range");
        mask[static_cast<size_t>(idx)] = 1;
    }
    // a 2x2 block must be moved as a whole
    for (Index j = 0; j + 1 < n; ++j) {
        if (ps.eigs[static_cast<size_t>(j)].is_complex &&
            ps.eigs[static_cast<size_t>(j)].block_id ==
                ps.eigs[static_cast<size_t>(j + 1)].block_id &&
            mask[static_cast<size_t>(j)] != mask[static_cast<size_t>(j + 1)])
            throw std::invalid_argument("reorder: selection splits a 2x2 block");
    }

    Matrix s1 = ps.q * ps.x1 * ps.z.transpose();
    Matrix s2 = ps.q * ps.x2 * ps.z.transpose();
    lapack::QzFactorization f = to_factorization(ps);
    lapack::tgsen(f, mask);
    check_reconstruction(s1, s2, f, ps.scale);
    return from_factorization(f, ps.scale);
}

double chordal(const GenEig& u, const GenEig& v) {
    const double nu = std::sqrt(u.alpha * u.alpha + u.alpha_im * u.alpha_im + u.beta * u.beta);
    const double nv = std::sqrt(v.alpha * v.alpha + v.alpha_im * v.alpha_im + v.beta * v.beta);
    if (nu == 0.0 || nv == 0.0) return 0.0;
    const double re = u.alpha * v.beta - v.alpha * u.beta;
    const double im = u.alpha_im * v.beta - v.alpha_im * u.beta;
    return std::min(1.0, std::hypot(re, im) / (nu * nv));
}

std::vector<std::vector<int>> cluster_by_gaps(const std::vector<GenEig>& eigs,
                                              double threshold,
                                              std::vector<double>* gaps_out) {
    if (eigs.empty()) throw std::invalid_argument("cluster_by_gaps: no eigenvalues");
    if (threshold <= 0.0) throw std::invalid_argument("cluster_by_gaps: threshold must be positive");
    const int r = static_cast<int>(eigs.size());

    std::vector<int> order;
    std::vector<double> gaps;
    sorted_cyclic_gaps(eigs, order, gaps);
    if (gaps_out) *gaps_out = gaps;

    const bool any_singular =
        std::any_of(eigs.begin(), eigs.end(), [](const GenEig& e) { return e.singular; });
    if (any_singular || r == 1) return {order};

    std::vector<int> cuts;
    for (int p = 0; p < r; ++p)
        if (gaps[static_cast<size_t>(p)] > threshold) cuts.push_back(p);

    if (cuts.size() < 2) return {order};

    std::vector<std::vector<int>> clusters;
    int start = (cuts.back() + 1) % r;
    std::vector<int> current;
    for (int step = 0; step < r; ++step) {
        const int p = (start + step) % r;
        current.push_back(order[static_cast<size_t>(p)]);
        if (std::binary_search(cuts.begin(), cuts.end(), p)) {
            clusters.push_back(std::move(current));
            current.clear();
        }
    }
    return clusters;
}

ClusterSplit eigenspace_bases(const PencilSchur& ps,
                              const std::vector<std::vector<int>>& clusters) {
    const Index n = ps.x1.rows();
    std::vector<int> seen(static_cast<size_t>(n), 0);
    for (const auto& cl : clusters)
        for (int idx : cl) {
            if (idx < 0 || idx >= n || seen[static_cast<size_t>(idx)]++)
                throw std::invalid_argument("eigenspace_bases: clusters must partition indices");
        }
    if (std::accumulate(seen.begin(), seen.end(), 0) != n)
        throw std::invalid_argument("eigenspace_bases: clusters must cover all eigenvalues");

    ClusterSplit split;
    std::vector<int> order;
    sorted_cyclic_gaps(ps.eigs, order, split.gaps);
    for (const auto& cl : clusters) {
        PencilSchur moved = reorder(ps, cl);
        split.members.push_back(cl);
        split.bases.push_back(moved.z.leftCols(static_cast<Index>(cl.size())));
    }
    return split;
}

}  // namespace cpd
