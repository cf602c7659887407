#pragma once

#include "cpd/pencil.hpp"
#include "cpd/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace cpd {

/// Scaling convention used by the separation bound: C columns unit norm,
/// the remaining term scale split evenly so |a_r| = |b_r|. Idempotent.
Cpd rescale_bound_convention(const Cpd& f);

/// Jth largest of the cyclic half-gaps { chi(l_r, l_{r+1}) / 2 } over the
/// theta-sorted eigenvalues (with l_{R+1} = l_1); 0 when fewer than J
/// distinct eigenvalues exist.
double delta_j(std::vector<GenEig> eigs, int j);

/// sigma_min(A) * sigma_min(B) * delta after rebalancing each column pair
/// to equal norms; 0 for rank-deficient factors.
double eps1(const Matrix& a_factor, const Matrix& b_factor, double delta);

/// Computable lower bound on the distance to the nearest pencil that is not
/// slice mix invertible: max over frontal slices of sigma_min(T_k).
double eps2_lower(const Tensor3& t);

/// min(eps1, eps2_lower) for one R x R x 2 pencil whose exact factors are
/// known; 0 when the pencil is not slice mix invertible. truth.c must hold
/// the mixed 2-row C factor of the pencil.
double pencil_bound(const Tensor3& pencil, const Cpd& truth, int j);

struct PencilBoundRecord {
    int unitary_index = 0;
    int pencil_index = 0;
    double delta = 0.0;
    double eps1 = 0.0;
    double eps2_lower = 0.0;
    double eps_pencil = 0.0;  // min(eps1, eps2_lower)
};

struct BoundReport {
    std::vector<PencilBoundRecord> records;  // all unitaries, all pencils
    std::vector<double> unitary_aggregates;  // 2-norm of per-pencil bounds, per unitary
    Matrix best_unitary;
    int best_unitary_index = -1;
    int best_pencil_index = -1;  // largest per-pencil bound within the best unitary
    double eps_aggregate = 0.0;  // 2-norm of per-pencil bounds, best unitary
    int j = 2;
};

/// Frobenius-radius guarantee for the existence of J separated eigenvalue
/// clusters in some subpencil: mixes t by sampled Haar orthogonal matrices,
/// bounds each disjoint slice-pair pencil, aggregates in the 2-norm, and
/// keeps the best mixing.
BoundReport corollary_bound(const Tensor3& t, const Cpd& truth, int j,
                            int num_unitaries, uint64_t seed);

/// Per-unitary evaluation used by corollary_bound; exposed for fixed mixes.
std::pair<std::vector<PencilBoundRecord>, double>
bound_for_unitary(const Tensor3& t, const Cpd& truth, int j, const Matrix& u);

/// Haar-distributed orthogonal matrix: QR of an iid standard-normal matrix
/// with the R-diagonal signs folded into Q.
Matrix haar_orthogonal(Index n, std::mt19937_64& rng);

/// CSV rows: unitary_index, pencil_index, delta, eps1, eps2_lower,
/// eps_pencil, eps_aggregate (header included).
void write_bound_csv(const BoundReport& report, std::ostream& os);

}  // namespace cpd
