#include "cpd/gesd.hpp"

#include "cpd/mlsvd.hpp"
#include "cpd/rng.hpp"
#include "cpd/tensor.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace cpd {

namespace {

struct NodeResult {
    Matrix a, b, c;  // factors in the node's input space
};

Matrix lstsq_b(const Matrix& unfold2, const Matrix& kr, bool* rank_deficient) {
    Eigen::ColPivHouseholderQR<Matrix> qr(kr);
    if (rank_deficient) *rank_deficient = qr.rank() < kr.cols();
    return qr.solve(unfold2.transpose()).transpose();
}

Matrix random_orthonormal_mix(Index k, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(k, 2);
    for (Index j = 0; j < 2; ++j)
        for (Index i = 0; i < k; ++i) g(i, j) = gauss(rng);
    Matrix q = Matrix::Identity(k, 2);
    q = Eigen::HouseholderQR<Matrix>(g).householderQ() * q;
    return q;
}

std::string path_string(const std::vector<int>& path) {
    std::string s;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(path[i]);
    }
    return s;
}

uint64_t node_seed_of(const GesdConfig& cfg, const std::vector<int>& path) {
    uint64_t h = derive_seed(cfg.seed, 0x67e5d0a3b2c1ULL);
    for (int c : path) h = derive_seed(h, static_cast<uint64_t>(c) + 1);
    return h;
}

bool core_is_rank1(const Mlsvd& m, double tol) {
    for (const Vector& sv : m.singular_values) {
        if (sv.size() < 2) continue;
        if (sv(0) == 0.0) return false;
        if (sv(1) > tol * sv(0)) return false;
    }
    return true;
}

NodeResult gesd_node(const Tensor3& input, Index rank, const GesdConfig& cfg,
                     std::vector<int>& path, Index col_offset,
                     std::vector<NodeDiagnostics>& diags,
                     std::vector<UnresolvedBlock>& unresolved) {
    const Index k = std::min(input.dim(3), rank);
    Mlsvd m = mlsvd_truncated(input, rank, rank, k);
    const Tensor3& core = m.core;

    diags.emplace_back();
    const size_t diag_idx = diags.size() - 1;
    diags[diag_idx].path = path_string(path);
    diags[diag_idx].rank = rank;
    diags[diag_idx].core_k = k;
    diags[diag_idx].depth = static_cast<int>(path.size());

    Cpd core_cpd;
    if (rank == 1) {
        diags[diag_idx].trivial = true;
        core_cpd.a = Matrix::Constant(1, 1, core(0, 0, 0));
        core_cpd.b = Matrix::Constant(1, 1, 1.0);
        core_cpd.c = Matrix::Constant(1, 1, 1.0);
    } else {
        SplitOutcome outcome = split_once(core, cfg, node_seed_of(cfg, path));
        diags[diag_idx].trials = outcome.trials;

        if (outcome.found) {
            const auto& split = outcome.split;
            diags[diag_idx].accepted_gaps = split.gaps;
            for (const auto& cl : split.members)
                diags[diag_idx].cluster_sizes.push_back(static_cast<Index>(cl.size()));

            core_cpd.a.resize(rank, rank);
            core_cpd.c.resize(k, rank);
            Index offset = 0;
            for (size_t i = 0; i < split.bases.size(); ++i) {
                const Index child_rank = split.bases[i].cols();
                Tensor3 sub = mode_product(core, split.bases[i].transpose(), 2);
                path.push_back(static_cast<int>(i));
                NodeResult child = gesd_node(sub, child_rank, cfg, path,
                                             col_offset + offset, diags, unresolved);
                path.pop_back();
                core_cpd.a.middleCols(offset, child_rank) = child.a;
                core_cpd.c.middleCols(offset, child_rank) = child.c;
                offset += child_rank;
            }
            core_cpd.b = lstsq_b(unfold(core, 2), khatri_rao(core_cpd.c, core_cpd.a), nullptr);
        } else if (core_is_rank1(m, cfg.rank1_tolerance)) {
            // declared rank is too high for the data; emit the single term
            // replicated so the column count stays consistent
            diags[diag_idx].collapsed_rank1 = true;
            Mlsvd r1 = mlsvd_truncated(core, 1, 1, 1);
            Vector a = r1.v1 * r1.core(0, 0, 0) / static_cast<double>(rank);
            core_cpd.a = a.replicate(1, rank);
            core_cpd.b = r1.v2.replicate(1, rank);
            core_cpd.c = r1.v3.replicate(1, rank);
        } else {
            diags[diag_idx].no_split = true;
            // subspace bases stand in for the unrecoverable columns
            core_cpd.a = Matrix::Identity(rank, rank);
            Matrix c_basis = Matrix::Zero(k, rank);
            for (Index r = 0; r < rank; ++r) c_basis(r % k, r) = 1.0;
            core_cpd.c = c_basis;
            bool rank_def = false;
            core_cpd.b = lstsq_b(unfold(core, 2), khatri_rao(core_cpd.c, core_cpd.a), &rank_def);
            UnresolvedBlock block;
            for (Index r = 0; r < rank; ++r) block.columns.push_back(col_offset + r);
            unresolved.push_back(std::move(block));
        }
    }

    NodeResult out;
    out.a = m.v1 * core_cpd.a;
    out.b = m.v2 * core_cpd.b;
    out.c = m.v3 * core_cpd.c;
    return out;
}

}  // namespace

SplitOutcome split_once(const Tensor3& core, const GesdConfig& cfg, uint64_t node_seed) {
    const Index r = core.dim(1), k = core.dim(3);
    if (core.dim(2) != r || r < 2)
        throw std::invalid_argument("split_once: core must be R x R x K with R >= 2");

    SplitOutcome outcome;
    auto try_pencil = [&](const Matrix& s1, const Matrix& s2, PencilTrial trial) {
        try {
            PencilSchur ps = qz(s1, s2);
            std::vector<double> gaps;
            auto clusters = cluster_by_gaps(ps.eigs, cfg.threshold, &gaps);
            trial.max_gap = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
            trial.clusters = static_cast<int>(clusters.size());
            if (clusters.size() >= 2) {
                outcome.split = eigenspace_bases(ps, clusters);
                outcome.found = true;
            }
        } catch (const std::runtime_error&) {
            trial.failed = true;
        }
        outcome.trials.push_back(trial);
        return outcome.found;
    };

    for (Index p = 0; 2 * p + 1 < k; ++p) {
        PencilTrial trial;
        trial.kind = PencilTrial::Kind::MlsvdSlices;
        trial.k1 = static_cast<int>(2 * p);
        trial.k2 = static_cast<int>(2 * p + 1);
        if (try_pencil(core.frontal_slice(2 * p), core.frontal_slice(2 * p + 1), trial))
            return outcome;
    }
    if (k >= 2) {
        for (int j = 0; j < cfg.max_random_pencils; ++j) {
            auto rng = make_rng(node_seed, static_cast<uint64_t>(j));
            Matrix mix = random_orthonormal_mix(k, rng);
            Tensor3 pencil = mode_product(core, mix.transpose(), 3);
            PencilTrial trial;
            trial.kind = PencilTrial::Kind::Random;
            trial.random_index = j;
            if (try_pencil(pencil.frontal_slice(0), pencil.frontal_slice(1), trial))
                return outcome;
        }
    }
    return outcome;
}

Rank1Term extract_rank1(const Matrix& sub, double tol) {
    Rank1Result r1 = rank1_approx_matrix(sub);
    Rank1Term term;
    term.ratio = r1.triple.sigma > 0.0 ? r1.sigma2 / r1.triple.sigma : 0.0;
    term.ok = term.ratio <= tol;
    term.a = r1.triple.sigma * r1.triple.u;
    term.c = r1.triple.v;
    return term;
}

Rank1Term extract_rank1(const Tensor3& sub, double tol) {
    if (sub.dim(2) != 1)
        throw std::invalid_argument("extract_rank1: subtensor must have mode-2 dim 1");
    return extract_rank1(Matrix(unfold(sub, 1)), tol);
}

Matrix solve_b(const Tensor3& core, const Matrix& a_factor, const Matrix& c_factor) {
    if (a_factor.cols() != c_factor.cols())
        throw std::invalid_argument("solve_b: factor column counts differ");
    Matrix kr = khatri_rao(c_factor, a_factor);
    Eigen::BDCSVD<Matrix> svd(kr, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-10 * sv(0))
        throw std::runtime_error(
            "solve_b: khatri_rao(C, A) is rank-deficient, sigma_min/sigma_max = " +
            std::to_string(sv(sv.size() - 1) / sv(0)));
    return svd.solve(Matrix(unfold(core, 2).transpose())).transpose();
}

GesdResult gesd(const Tensor3& t, Index rank, const GesdConfig& cfg) {
    if (rank < 1) throw std::invalid_argument("gesd: rank must be at least 1");
    if (rank > std::min(t.dim(1), t.dim(2)))
        throw std::invalid_argument("gesd: rank exceeds min(I1, I2)");
    if (cfg.threshold <= 0.0 || cfg.threshold > 1.0)
        throw std::invalid_argument("gesd: threshold must lie in (0, 1]");
    if (cfg.max_random_pencils < 1)
        throw std::invalid_argument("gesd: max_random_pencils must be >= 1");

    GesdResult result;
    std::vector<int> path;
    NodeResult top = gesd_node(t, rank, cfg, path, 0, result.diagnostics,
                               result.unresolved_blocks);
    result.cpd = Cpd{top.a, top.b, top.c};
    for (UnresolvedBlock& block : result.unresolved_blocks) {
        block.mode1_basis.resize(top.a.rows(), static_cast<Index>(block.columns.size()));
        block.mode3_basis.resize(top.c.rows(), static_cast<Index>(block.columns.size()));
        for (size_t i = 0; i < block.columns.size(); ++i) {
            block.mode1_basis.col(static_cast<Index>(i)) = top.a.col(block.columns[i]);
            block.mode3_basis.col(static_cast<Index>(i)) = top.c.col(block.columns[i]);
        }
    }
    return result;
}

}  // namespace cpd
