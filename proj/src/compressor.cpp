#include "swsc/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swsc/error.hpp"

namespace swsc {

namespace {

void round_all(Matrix& m, Precision p, const char* what) {
  for (double& v : m.values()) {
    v = round_to(p, v);
    if (!std::isfinite(v)) {
      throw NumericalError(std::string("compress: ") + what + " value exceeds the range of " + to_string(p));
    }
  }
}

}  // namespace

Matrix restore_from_clusters(const ChannelClustering& c, std::size_t rows, std::size_t cols) {
  if (c.centroids.cols() != rows || c.labels.size() != cols || c.centroids.rows() != c.k) {
    throw ShapeError("restore_from_clusters: clustering does not describe a " + std::to_string(rows) + "x" +
                     std::to_string(cols) + " matrix");
  }
  Matrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    if (c.labels[j] >= c.k) throw ShapeError("restore_from_clusters: label out of range");
    auto centroid = c.centroids.row(c.labels[j]);
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = centroid[i];
  }
  return out;
}

Matrix residual(const Matrix& w, const Matrix& restored) { return subtract(w, restored); }

LowRankFactors compensate(const Matrix& err, std::size_t r, const SvdOptions& opts) {
  const std::size_t m = err.rows();
  const std::size_t n = err.cols();
  if (r > std::min(m, n)) {
    throw ParameterError("compensate: rank " + std::to_string(r) + " exceeds min(" + std::to_string(m) + ", " +
                         std::to_string(n) + ")");
  }
  LowRankFactors f{r, Matrix(m, r), Matrix(r, n), {}};
  if (r == 0) return f;

  SvdResult svd = truncated_svd(err, r, opts);
  for (std::size_t t = 0; t < r; ++t) {
    const double root = std::sqrt(svd.singular_values[t]);
    for (std::size_t i = 0; i < m; ++i) f.a_factor(i, t) = svd.left(i, t) * root;
    for (std::size_t j = 0; j < n; ++j) f.b_factor(t, j) = root * svd.right(t, j);
  }
  f.retained_singular_values = std::move(svd.singular_values);
  return f;
}

CompressedWeight compress(const Matrix& w, std::size_t k, std::size_t r, std::uint64_t seed, Precision precision,
                          const CompressOptions& opts) {
  require_nonempty(w, "compress");
  if (r > std::min(w.rows(), w.cols())) {
    throw ParameterError("compress: rank " + std::to_string(r) + " exceeds min(" + std::to_string(w.rows()) + ", " +
                         std::to_string(w.cols()) + ")");
  }
  KMeansOptions km = opts.kmeans;
  km.threads = std::max(km.threads, opts.threads);

  CompressedWeight out;
  out.rows = w.rows();
  out.cols = w.cols();
  out.precision = precision;
  out.seed = seed;
  out.clustering = kmeans_channels(w, k, seed, km);
  // The residual is taken against the centroids as they will be stored.
  round_all(out.clustering.centroids, precision, "centroid");

  const Matrix err = residual(w, restore_from_clusters(out.clustering, w.rows(), w.cols()));
  out.factors = compensate(err, r, opts.svd);
  round_all(out.factors.a_factor, precision, "factor");
  round_all(out.factors.b_factor, precision, "factor");
  for (double& s : out.factors.retained_singular_values) s = round_to_float(s);
  return out;
}

void validate(const CompressedWeight& c) {
  if (c.rows == 0 || c.cols == 0) throw IntegrityError("compressed weight: empty shape");
  validate(c.clustering, c.rows, c.cols);
  const LowRankFactors& f = c.factors;
  if (f.a_factor.rows() != c.rows || f.a_factor.cols() != f.rank || f.b_factor.rows() != f.rank ||
      f.b_factor.cols() != c.cols || f.retained_singular_values.size() != f.rank) {
    throw IntegrityError("compressed weight: factor shapes do not match rank " + std::to_string(f.rank) +
                         " and shape " + std::to_string(c.rows) + "x" + std::to_string(c.cols));
  }
}

Matrix decompress(const CompressedWeight& c, unsigned threads) {
  try {
    validate(c);
  } catch (const ShapeError& e) {
    throw IntegrityError(e.what());
  }
  Matrix out = restore_from_clusters(c.clustering, c.rows, c.cols);
  if (c.factors.rank == 0) return out;
  return add(out, matmul(c.factors.a_factor, c.factors.b_factor, threads));
}

}  // namespace swsc
