#pragma once

#include "cpd/types.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace cpd {

/// Factor-matrix error report: per-factor relative Frobenius errors after a
/// single optimal column matching and per-column least-squares scaling.
struct CpdErr {
    std::array<double, 3> factor_errors;  // a, b, c
    double max_error;                     // the reported cpderr
    std::vector<int> permutation;         // est column matched to truth column r
    std::array<std::vector<double>, 3> scales;
};

/// max over factors of |F - F_est P D|_F / |F|_F. The permutation is a
/// globally optimal assignment on the combined congruence cost
/// sum_factors (1 - |cos angle(col, col)|); scales are per matched column,
/// least-squares optimal per factor.
CpdErr cpderr(const Cpd& truth, const Cpd& est);

/// 20 log10(|signal|_F / |noise|_F); +inf when the noise has zero norm.
double snr_db(const Tensor3& signal, const Tensor3& noise);

/// signal + iid standard-normal noise rescaled so snr_db hits the target
/// exactly. Deterministic under (seed, tensor dims) for any thread count.
Tensor3 add_noise(const Tensor3& t, double target_snr_db, uint64_t seed);

/// Principal angles between the ranges of x and y, in [0, pi/2], largest
/// first; count = min(cols). Throws on rank-deficient input.
std::vector<double> principal_angles(const Matrix& x, const Matrix& y);

}  // namespace cpd
