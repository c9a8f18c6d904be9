#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swsc/matrix.hpp"

namespace swsc {

/// Column ("channel") clustering of an m x n matrix: one label per column and
/// k centroid columns of length m, stored as a k x m matrix (row j is
/// centroid j).
struct ChannelClustering {
  std::size_t k = 0;
  std::vector<std::uint32_t> labels;
  Matrix centroids;

  std::size_t channel_length() const noexcept { return centroids.cols(); }
  std::size_t channel_count() const noexcept { return labels.size(); }
};

struct KMeansOptions {
  std::size_t max_iter = 100;
  /// Stop once no centroid moves farther than this (Euclidean).
  double tol = 1e-6;
  /// Independent k-means++ initializations; the lowest objective wins. Run i
  /// is seeded with seed + i.
  std::size_t restarts = 1;
  /// Workers for the assignment step. Output does not depend on this.
  unsigned threads = 1;
};

/// Per-iteration diagnostics, filled when a trace is passed in.
struct KMeansTrace {
  /// Objective after each centroid update of the winning run.
  std::vector<double> objective;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Lloyd's algorithm over the columns of `w` with squared Euclidean distance
/// and seeded k-means++ initialization.
///
/// Nearest-centroid ties go to the lowest cluster index. A cluster left empty
/// by an assignment step takes over the point farthest from its centroid
/// (among clusters with more than one member), so every label in [0, k) is
/// used on return and every centroid is the mean of its members.
///
/// Throws ParameterError unless 1 <= k <= w.cols().
ChannelClustering kmeans_channels(const Matrix& w, std::size_t k, std::uint64_t seed,
                                  const KMeansOptions& opts = {}, KMeansTrace* trace = nullptr);

/// Sum over columns of the squared distance to their labeled centroid.
double kmeans_objective(const Matrix& w, const ChannelClustering& c);

/// Checks label range, sizes against (rows, cols), and that no cluster is empty.
/// Throws ShapeError or IntegrityError.
void validate(const ChannelClustering& c, std::size_t rows, std::size_t cols);

}  // namespace swsc
