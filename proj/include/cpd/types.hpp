#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cpd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Dense real third-order tensor. Storage is column-major over (i, j, k)
/// with i fastest, so the mode-1 unfolding is a plain reshape of the buffer.
class Tensor3 {
public:
    Tensor3() : dims_{0, 0, 0} {}

    Tensor3(Index i1, Index i2, Index i3)
        : dims_{i1, i2, i3}, data_(static_cast<size_t>(i1 * i2 * i3), 0.0) {
        if (i1 <= 0 || i2 <= 0 || i3 <= 0)
            throw std::invalid_argument("Tensor3: dimensions must be positive");
    }

    Tensor3(Index i1, Index i2, Index i3, std::vector<double> data)
        : dims_{i1, i2, i3}, data_(std::move(data)) {
        if (i1 <= 0 || i2 <= 0 || i3 <= 0)
            throw std::invalid_argument("Tensor3: dimensions must be positive");
        if (static_cast<Index>(data_.size()) != i1 * i2 * i3)
            throw std::invalid_argument("Tensor3: data length does not match dims");
    }

    Index dim(int mode) const { return dims_[static_cast<size_t>(mode - 1)]; }
    const std::array<Index, 3>& dims() const { return dims_; }
    Index size() const { return dims_[0] * dims_[1] * dims_[2]; }

    double operator()(Index i, Index j, Index k) const {
        return data_[static_cast<size_t>(i + j * dims_[0] + k * dims_[0] * dims_[1])];
    }
    double& operator()(Index i, Index j, Index k) {
        return data_[static_cast<size_t>(i + j * dims_[0] + k * dims_[0] * dims_[1])];
    }

    const double* data() const { return data_.data(); }
    double* data() { return data_.data(); }

    /// Frontal slice T(:,:,k) as a matrix copy.
    Matrix frontal_slice(Index k) const {
        return Eigen::Map<const Matrix>(data_.data() + k * dims_[0] * dims_[1],
                                        dims_[0], dims_[1]);
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

private:
    std::array<Index, 3> dims_;
    std::vector<double> data_;
};

/// Factor-matrix triple of a canonical polyadic decomposition.
/// Column r of (a, b, c) forms the r-th rank-1 term.
struct Cpd {
    Matrix a;
    Matrix b;
    Matrix c;

    Index rank() const { return a.cols(); }
};

/// Throws unless all three factors have the same column count, entries are
/// finite, and no column is identically zero.
void validate_cpd(const Cpd& f);

}  // namespace cpd
