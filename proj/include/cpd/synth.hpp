#pragma once

#include "cpd/types.hpp"

#include <cstdint>
#include <optional>

namespace cpd {

enum class FactorDist { StandardNormal, Uniform01, Correlated };

/// How to sample one factor matrix. Correlated mode draws the first column
/// uniform on [0,1]^I and every later column at a fixed angle from it.
struct FactorSpec {
    FactorDist dist = FactorDist::StandardNormal;
    Index rows = 0;
    Index cols = 0;
    double angle_degrees = 10.0;  // used by Correlated only
    uint64_t seed = 0;
};

Matrix gen_factor(const FactorSpec& spec);

struct Problem {
    Tensor3 noisy;
    Cpd truth;
    Tensor3 noiseless;
    int regen_count = 0;  // times factors were redrawn for Khatri-Rao rank
};

/// Draws truth factors, forms the dense tensor, and adds noise at the given
/// SNR (noisy == noiseless when snr is absent). Factors are redrawn, with a
/// logged count, if khatri_rao(C, A) is numerically rank-deficient.
Problem gen_problem(Index i1, Index i2, Index i3, Index rank, FactorDist dist_a,
                    FactorDist dist_b, FactorDist dist_c,
                    std::optional<double> snr_db_target, uint64_t seed,
                    double angle_degrees = 10.0);

}  // namespace cpd
