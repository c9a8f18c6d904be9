#pragma once

// Reference computations for the tests. None of these share code with the
// library paths they check.

#include <cstdint>
#include <random>
#include <vector>

#include "swsc/matrix.hpp"

namespace swsc::oracle {

/// All singular values of `a`, descending, as square roots of the eigenvalues
/// of the smaller Gram matrix (Eigen's self-adjoint solver).
std::vector<double> singular_values(const Matrix& a);

/// sqrt of the sum of squares of singular values beyond the first r.
double discarded_norm(const std::vector<double>& sigma, std::size_t r);

struct Partition {
  std::vector<std::uint32_t> labels;
  double objective;
};

/// Minimum within-cluster sum of squares over every partition of the columns
/// of `w` into exactly k non-empty groups (restricted growth strings).
Partition best_partition(const Matrix& w, std::size_t k);

/// Within-cluster sum of squares of a labeling, centroids taken as means.
double partition_objective(const Matrix& w, const std::vector<std::uint32_t>& labels, std::size_t k);

/// True when a and b induce the same partition (equal up to relabeling).
bool same_partition(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);

/// Scalar RTN: nearest point of the grid lo + q (hi - lo) / (2^bits - 1),
/// found by scanning every level.
double nearest_grid_point(double v, double lo, double hi, int bits);

/// Matrix with i.i.d. standard normal entries.
Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Rank-1 matrix u v^T with random u, v.
Matrix random_rank_one(std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace swsc::oracle
