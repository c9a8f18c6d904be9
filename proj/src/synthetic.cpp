#include <cmath>
#include <random>
#include <string>

#include "swsc/error.hpp"
#include "swsc/metrics.hpp"

namespace swsc {

Matrix gen_synthetic(std::size_t m, std::size_t n, std::size_t k_true, double noise_sigma, std::uint64_t seed) {
  if (m == 0 || n == 0) throw ParameterError("gen_synthetic: rows and cols must be positive");
  if (k_true < 1 || k_true > n) {
    throw ParameterError("gen_synthetic: true cluster count " + std::to_string(k_true) + " outside [1, " +
                         std::to_string(n) + "]");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ParameterError("gen_synthetic: noise must be a finite non-negative number");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Matrix centers(k_true, m);
  for (double& v : centers.values()) v = normal(rng);

  Matrix w(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto center = centers.row(j % k_true);
    for (std::size_t i = 0; i < m; ++i) w(i, j) = center[i] + noise_sigma * normal(rng);
  }
  return w;
}

std::vector<std::uint32_t> synthetic_labels(std::size_t n, std::size_t k_true) {
  std::vector<std::uint32_t> labels(n);
  for (std::size_t j = 0; j < n; ++j) labels[j] = static_cast<std::uint32_t>(j % k_true);
  return labels;
}

}  // namespace swsc
