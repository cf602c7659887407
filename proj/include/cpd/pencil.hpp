#pragma once

#include "cpd/lapack.hpp"
#include "cpd/types.hpp"

#include <vector>

namespace cpd {

/// One generalized eigenvalue of a 2-slice pencil, stored projectively as
/// (alpha, beta) on Gr(1, R^2). Real eigenvalues are normalized to unit
/// 2-norm with the first nonzero coordinate positive; members of a
/// complex-conjugate 2x2 block carry the imaginary part of alpha and share
/// theta with their partner.
struct GenEig {
    double alpha = 0.0;
    double alpha_im = 0.0;
    double beta = 0.0;
    double theta = 0.0;   // angle of span(alpha_re, beta), in [0, pi)
    bool is_complex = false;
    bool singular = false;  // alpha ~ beta ~ 0 relative to the pencil scale
    int block_id = -1;      // diagonal block this eigenvalue belongs to
};

/// Makes a normalized real GenEig from a raw (alpha, beta) pair.
GenEig make_gen_eig(double alpha, double beta);

/// Ordered generalized real Schur factorization of a 2-slice pencil:
/// s1 = q x1 z^T, s2 = q x2 z^T, plus the eigenvalue list in diagonal order.
struct PencilSchur {
    Matrix q, z;
    Matrix x1, x2;
    std::vector<GenEig> eigs;
    double scale = 0.0;  // |s1|_F + |s2|_F, used for singularity tolerance
};

PencilSchur qz(const Matrix& s1, const Matrix& s2);

/// Equivalent factorization with the selected eigenvalues moved to the
/// leading diagonal positions. select must be a union of whole blocks.
PencilSchur reorder(const PencilSchur& ps, const std::vector<int>& select);

/// Chordal metric on Gr(1, K^2): sine of the principal angle between the
/// spans; |u1 v2 - u2 v1| for unit real pairs. Handles complex pairs via
/// the complex modulus.
double chordal(const GenEig& u, const GenEig& v);

/// Partition of generalized eigenvalues into gap-separated clusters with
/// orthonormal eigenspace bases.
struct ClusterSplit {
    std::vector<std::vector<int>> members;  // eigenvalue indices per cluster
    std::vector<Matrix> bases;              // R x j_n, orthonormal columns
    std::vector<double> gaps;               // cyclic adjacent gaps (sorted-theta order)
};

/// Sorts eigenvalues by theta, computes cyclic adjacent chordal gaps
/// (including the wraparound pair), and cuts at every gap strictly above
/// the threshold. Fewer than two cuts, or any singular eigenvalue, yields a
/// single cluster. Conjugate-pair members are never separated.
std::vector<std::vector<int>> cluster_by_gaps(const std::vector<GenEig>& eigs,
                                              double threshold,
                                              std::vector<double>* gaps_out = nullptr);

/// Extracts an orthonormal basis for each cluster's generalized eigenspace
/// by reordering the cluster to the top and taking the leading columns of z.
ClusterSplit eigenspace_bases(const PencilSchur& ps,
                              const std::vector<std::vector<int>>& clusters);

}  // namespace cpd
