#include "swsc/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "swsc/error.hpp"
#include "swsc/parallel.hpp"

namespace swsc {

namespace {

double squared_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

// Uniform double in [0, 1) from the top 53 bits; unlike
// std::uniform_real_distribution this is identical across standard libraries.
double next_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

// k-means++ seeding over the rows of `points`.
Matrix seed_plus_plus(const Matrix& points, std::size_t k, std::uint64_t seed) {
  const std::size_t n = points.rows();
  std::mt19937_64 rng(seed);
  Matrix centers(k, points.cols());
  std::vector<bool> chosen(n, false);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());

  auto take = [&](std::size_t c, std::size_t j) {
    chosen[j] = true;
    std::ranges::copy(points.row(j), centers.row(c).begin());
    for (std::size_t p = 0; p < n; ++p) d2[p] = std::min(d2[p], squared_distance(points.row(p), points.row(j)));
  };

  take(0, std::min(n - 1, static_cast<std::size_t>(next_unit(rng) * static_cast<double>(n))));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = next_unit(rng) * total;
      double cumulative = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        if (d2[p] == 0.0) continue;
        cumulative += d2[p];
        pick = p;
        if (cumulative > target) break;
      }
    } else {
      // Every remaining point coincides with a center; empty-cluster repair
      // sorts out the duplicates later.
      pick = static_cast<std::size_t>(std::ranges::find(chosen, false) - chosen.begin());
    }
    take(c, pick);
  }
  return centers;
}

struct Assignment {
  std::vector<std::uint32_t> labels;
  std::vector<double> distance;  // squared distance to the assigned centroid
};

void assign(const Matrix& points, const Matrix& centers, unsigned threads, Assignment& out) {
  const std::size_t k = centers.rows();
  parallel_for(points.rows(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      std::uint32_t best = 0;
      double best_d = squared_distance(points.row(p), centers.row(0));
      for (std::size_t c = 1; c < k; ++c) {
        const double d = squared_distance(points.row(p), centers.row(c));
        if (d < best_d) {
          best_d = d;
          best = static_cast<std::uint32_t>(c);
        }
      }
      out.labels[p] = best;
      out.distance[p] = best_d;
    }
  });
}

void repair_empty(const Matrix& points, Matrix& centers, Assignment& a) {
  const std::size_t k = centers.rows();
  std::vector<std::size_t> counts(k, 0);
  for (auto l : a.labels) ++counts[l];
  for (std::size_t e = 0; e < k; ++e) {
    if (counts[e] != 0) continue;
    std::size_t far = points.rows();
    for (std::size_t p = 0; p < points.rows(); ++p) {
      if (counts[a.labels[p]] < 2) continue;
      if (far == points.rows() || a.distance[p] > a.distance[far]) far = p;
    }
    --counts[a.labels[far]];
    ++counts[e];
    a.labels[far] = static_cast<std::uint32_t>(e);
    a.distance[far] = 0.0;
    std::ranges::copy(points.row(far), centers.row(e).begin());
  }
}

Matrix cluster_means(const Matrix& points, const std::vector<std::uint32_t>& labels, std::size_t k) {
  Matrix sums(k, points.cols());
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t p = 0; p < points.rows(); ++p) {
    auto dst = sums.row(labels[p]);
    auto src = points.row(p);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    ++counts[labels[p]];
  }
  for (std::size_t c = 0; c < k; ++c) {
    const double count = static_cast<double>(counts[c]);
    for (double& v : sums.row(c)) v /= count;
  }
  return sums;
}

double objective_of(const Matrix& points, const Matrix& centers, const std::vector<std::uint32_t>& labels) {
  double s = 0.0;
  for (std::size_t p = 0; p < points.rows(); ++p) s += squared_distance(points.row(p), centers.row(labels[p]));
  return s;
}

struct Run {
  ChannelClustering clustering;
  double objective;
  KMeansTrace trace;
};

Run lloyd(const Matrix& points, std::size_t k, std::uint64_t seed, const KMeansOptions& opts) {
  Run run{{k, {}, seed_plus_plus(points, k, seed)}, 0.0, {}};
  Matrix& centers = run.clustering.centroids;
  Assignment a{std::vector<std::uint32_t>(points.rows()), std::vector<double>(points.rows())};
  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    assign(points, centers, opts.threads, a);
    repair_empty(points, centers, a);
    Matrix next = cluster_means(points, a.labels, k);
    double movement = 0.0;
    for (std::size_t c = 0; c < k; ++c) movement = std::max(movement, squared_distance(next.row(c), centers.row(c)));
    centers = std::move(next);
    run.trace.iterations = it + 1;
    run.trace.objective.push_back(objective_of(points, centers, a.labels));
    if (std::sqrt(movement) < opts.tol) {
      run.trace.converged = true;
      break;
    }
  }
  run.clustering.labels = std::move(a.labels);
  run.objective = run.trace.objective.empty() ? objective_of(points, centers, run.clustering.labels)
                                              : run.trace.objective.back();
  return run;
}

}  // namespace

ChannelClustering kmeans_channels(const Matrix& w, std::size_t k, std::uint64_t seed, const KMeansOptions& opts,
                                  KMeansTrace* trace) {
  require_nonempty(w, "kmeans_channels");
  if (k < 1 || k > w.cols()) {
    throw ParameterError("kmeans_channels: cluster count " + std::to_string(k) + " outside [1, " +
                         std::to_string(w.cols()) + "]");
  }
  if (k > std::numeric_limits<std::uint32_t>::max()) throw ParameterError("kmeans_channels: cluster count too large");
  if (opts.max_iter < 1) throw ParameterError("kmeans_channels: max_iter must be positive");
  if (!(opts.tol >= 0.0)) throw ParameterError("kmeans_channels: tol must be non-negative");
  if (opts.restarts < 1) throw ParameterError("kmeans_channels: restarts must be positive");

  const Matrix points = w.transposed();
  Run best = lloyd(points, k, seed, opts);
  for (std::size_t i = 1; i < opts.restarts; ++i) {
    Run run = lloyd(points, k, seed + i, opts);
    if (run.objective < best.objective) best = std::move(run);
  }
  if (trace) *trace = std::move(best.trace);
  return std::move(best.clustering);
}

double kmeans_objective(const Matrix& w, const ChannelClustering& c) {
  validate(c, w.rows(), w.cols());
  double s = 0.0;
  for (std::size_t j = 0; j < w.cols(); ++j) {
    auto centroid = c.centroids.row(c.labels[j]);
    for (std::size_t i = 0; i < w.rows(); ++i) {
      const double d = w(i, j) - centroid[i];
      s += d * d;
    }
  }
  return s;
}

void validate(const ChannelClustering& c, std::size_t rows, std::size_t cols) {
  if (c.k < 1) throw IntegrityError("clustering: k must be at least 1");
  if (c.centroids.rows() != c.k || c.centroids.cols() != rows || c.labels.size() != cols) {
    throw ShapeError("clustering: expected " + std::to_string(c.k) + " centroids of length " + std::to_string(rows) +
                     " and " + std::to_string(cols) + " labels, got " + std::to_string(c.centroids.rows()) +
                     " of length " + std::to_string(c.centroids.cols()) + " and " + std::to_string(c.labels.size()));
  }
  std::vector<bool> used(c.k, false);
  for (std::size_t j = 0; j < cols; ++j) {
    if (c.labels[j] >= c.k) {
      throw IntegrityError("clustering: label " + std::to_string(c.labels[j]) + " of channel " + std::to_string(j) +
                           " not below k=" + std::to_string(c.k));
    }
    used[c.labels[j]] = true;
  }
  for (std::size_t j = 0; j < c.k; ++j) {
    if (!used[j]) throw IntegrityError("clustering: cluster " + std::to_string(j) + " has no channels");
  }
}

}  // namespace swsc
