#pragma once

#include "cpd/types.hpp"

#include <iosfwd>
#include <string>

namespace cpd {

/// Text tensor format: a header line "dims I1 I2 I3" followed by the
/// entries in i-fastest order, whitespace separated.
void save_tensor(const Tensor3& t, const std::string& path);
Tensor3 load_tensor(const std::string& path);

/// Factor sidecar format: header "factors R I1 I2 I3", then A, B, C as
/// row-per-line blocks with R values each.
void save_factors(const Cpd& f, const std::string& path);
Cpd load_factors(const std::string& path);

/// Matrix as CSV rows (no header); used for unfolding exports.
void write_matrix_csv(const Matrix& m, std::ostream& os);

}  // namespace cpd
