#pragma once

#include <cstddef>
#include <vector>

#include "swsc/matrix.hpp"

namespace swsc {

struct SvdOptions {
  std::size_t max_sweeps = 1000;
  /// A column pair counts as orthogonal once |<a_p, a_q>| <= tol * |a_p| |a_q|.
  double tol = 1e-10;
};

/// Leading singular triplets of a matrix.
///
/// `left` is m x r with orthonormal columns, `right` is r x n with orthonormal
/// rows, and `singular_values` is non-increasing and non-negative. Each
/// triplet's sign is fixed so that the largest-magnitude entry of its left
/// vector is positive (first such entry on ties).
struct SvdResult {
  Matrix left;
  std::vector<double> singular_values;
  Matrix right;

  std::size_t rank() const noexcept { return singular_values.size(); }
};

/// The r dominant singular triplets of `a`, computed by one-sided (Hestenes)
/// Jacobi on the full matrix and then truncated.
///
/// Throws ParameterError unless 1 <= r <= min(rows, cols), and NumericalError
/// if the sweeps do not converge within `opts.max_sweeps`.
SvdResult truncated_svd(const Matrix& a, std::size_t r, const SvdOptions& opts = {});

/// left * diag(singular_values) * right.
Matrix svd_reconstruct(const SvdResult& svd);

}  // namespace swsc
