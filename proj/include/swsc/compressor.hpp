#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swsc/half.hpp"
#include "swsc/kmeans.hpp"
#include "swsc/matrix.hpp"
#include "swsc/svd.hpp"

namespace swsc {

/// Split factors of a rank-r residual approximation: a = U_r diag(sqrt(s)),
/// b = diag(sqrt(s)) V_r^T. Rank 0 means no compensation (both empty).
struct LowRankFactors {
  std::size_t rank = 0;
  Matrix a_factor;  // rows x rank
  Matrix b_factor;  // rank x cols
  std::vector<double> retained_singular_values;
};

/// Everything needed to rebuild a weight matrix.
struct CompressedWeight {
  std::size_t rows = 0;
  std::size_t cols = 0;
  ChannelClustering clustering;
  LowRankFactors factors;
  Precision precision = Precision::f32;
  std::uint64_t seed = 0;
};

struct CompressOptions {
  KMeansOptions kmeans;
  SvdOptions svd;
  /// Workers for k-means assignment and matrix products; output is bitwise
  /// independent of this value.
  unsigned threads = 1;
};

/// Replaces each column of the original matrix by its cluster's centroid.
Matrix restore_from_clusters(const ChannelClustering& c, std::size_t rows, std::size_t cols);

/// Element-wise w - restored.
Matrix residual(const Matrix& w, const Matrix& restored);

/// Rank-r split factors of `err`; r = 0 yields empty factors.
/// Throws ParameterError unless r <= min(rows, cols).
LowRankFactors compensate(const Matrix& err, std::size_t r, const SvdOptions& opts = {});

/// Full pipeline: cluster, round centroids to storage width, restore, take the
/// residual, compensate it at rank r, round the factors.
CompressedWeight compress(const Matrix& w, std::size_t k, std::size_t r, std::uint64_t seed, Precision precision,
                          const CompressOptions& opts = {});

/// restore_from_clusters + a_factor * b_factor. Throws IntegrityError when the
/// parts disagree.
Matrix decompress(const CompressedWeight& c, unsigned threads = 1);

/// Shape and label checks shared by decompress and the archive writer.
void validate(const CompressedWeight& c);

}  // namespace swsc
