#pragma once

#include "cpd/types.hpp"

namespace cpd {

struct GevdResult {
    Cpd cpd;
    bool complex_pairs = false;     // complex eigenvectors split into re/im columns
    bool ill_conditioned = false;   // eigenvector matrix condition above 1e12
    double eigvec_condition = 0.0;
};

/// Classical single-pencil GEVD baseline: compress, take the first two
/// MLSVD core slices as the pencil, read B from its generalized
/// eigenvectors, then solve for khatri_rao(C, A) in least squares and split
/// each column into a rank-1 outer product. Deterministic.
GevdResult gevd(const Tensor3& t, Index rank);

}  // namespace cpd
