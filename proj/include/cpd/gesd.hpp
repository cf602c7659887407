#pragma once

#include "cpd/pencil.hpp"
#include "cpd/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cpd {

struct GesdConfig {
    double threshold = 0.2;      // chordal gap needed to cut between clusters
    int max_random_pencils = 50; // random trials after the MLSVD slice pairs
    uint64_t seed = 0;
    double rank1_tolerance = 1e-6;  // relative multilinear-singular-value cutoff
};

/// One attempted pencil during a splitting step.
struct PencilTrial {
    enum class Kind { MlsvdSlices, Random };
    Kind kind = Kind::MlsvdSlices;
    int k1 = -1, k2 = -1;  // slice indices (MlsvdSlices)
    int random_index = -1; // trial number (Random)
    double max_gap = 0.0;  // largest cyclic chordal gap seen
    int clusters = 1;
    bool failed = false;   // backend failure, trial skipped
};

struct NodeDiagnostics {
    std::string path;  // child indices from the root, e.g. "" or "1.0"
    Index rank = 0;
    Index core_k = 0;
    int depth = 0;
    bool trivial = false;          // rank-1 leaf
    bool no_split = false;         // every pencil trial stayed below threshold
    bool collapsed_rank1 = false;  // declared rank >= 2 but core was rank-1
    std::vector<PencilTrial> trials;
    std::vector<double> accepted_gaps;  // cyclic gaps of the winning pencil
    std::vector<Index> cluster_sizes;
};

/// Columns of the result that could not be resolved into rank-1 terms; the
/// factors carry orthonormal subspace bases there instead (usable as an
/// optimization initialization).
struct UnresolvedBlock {
    std::vector<Index> columns;  // indices into the final factor columns
    Matrix mode1_basis;
    Matrix mode3_basis;
};

struct GesdResult {
    Cpd cpd;
    std::vector<NodeDiagnostics> diagnostics;  // depth-first node order
    std::vector<UnresolvedBlock> unresolved_blocks;
    bool success() const { return unresolved_blocks.empty(); }
};

/// Recursive generalized eigenspace decomposition: compress, split the
/// generalized eigenvalues of trial pencils into gap-separated clusters,
/// reduce to each cluster's eigenspace, recurse, and solve for B per level.
GesdResult gesd(const Tensor3& t, Index rank, const GesdConfig& cfg = {});

struct SplitOutcome {
    bool found = false;
    ClusterSplit split;
    std::vector<PencilTrial> trials;
};

/// One splitting step on an MLSVD core of dims (R, R, K): tries the
/// disjoint MLSVD slice pairs in order, then random orthonormal slice
/// mixes; the first pencil producing at least two clusters wins.
SplitOutcome split_once(const Tensor3& core, const GesdConfig& cfg, uint64_t node_seed);

struct Rank1Term {
    Vector a;
    Vector c;
    bool ok = false;
    double ratio = 0.0;  // sigma2 / sigma1
};

/// Rank-1 check and extraction on a mode-2 contracted subtensor reshaped to
/// an R x K matrix: ok iff sigma2/sigma1 <= tol; a = sigma * u, c = v.
Rank1Term extract_rank1(const Matrix& sub, double tol);
Rank1Term extract_rank1(const Tensor3& sub, double tol);

/// Least-squares solution of unfold(core, 2) = B * khatri_rao(C, A)^T.
/// Throws when khatri_rao(C, A) is rank-deficient below 1e-10 * sigma_max.
Matrix solve_b(const Tensor3& core, const Matrix& a_factor, const Matrix& c_factor);

}  // namespace cpd
