#pragma once

#include "cpd/types.hpp"

#include <array>

namespace cpd {

/// Truncated multilinear SVD: column-orthonormal mode bases and the core
/// core = t x1 V1^T x2 V2^T x3 V3^T. Column signs are fixed so each basis
/// column's largest-magnitude entry is positive.
struct Mlsvd {
    Matrix v1, v2, v3;
    Tensor3 core;
    std::array<Vector, 3> singular_values;  // per mode, descending
};

Mlsvd mlsvd_truncated(const Tensor3& t, Index r1, Index r2, Index r3);

/// Lift a CPD of the core back to the original space: factors are
/// left-multiplied by V1, V2, V3 respectively.
Cpd expand(const Mlsvd& m, const Cpd& core_cpd);

}  // namespace cpd
