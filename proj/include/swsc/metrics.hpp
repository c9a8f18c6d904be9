#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swsc/compressor.hpp"
#include "swsc/half.hpp"
#include "swsc/matrix.hpp"
#include "swsc/rtn.hpp"

namespace swsc {

/// Non-negative fraction in lowest terms; used where bit budgets must compare exactly.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Fraction reduced(std::uint64_t num, std::uint64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Bit budget of one compressed matrix.
///
/// avg_bits_paper counts codebook and factor values only, which is how
/// published per-weight budgets for this scheme are quoted; avg_bits_total also
/// charges ceil(log2 k) bits per channel label. compression_ratio counts stored
/// values (centroid entries, one per label, factor entries) against m*n.
struct StorageReport {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::uint64_t k = 0;
  std::uint64_t r = 0;
  unsigned value_bits = 16;

  std::uint64_t codebook_bits = 0;
  std::uint64_t factor_bits = 0;
  std::uint64_t label_bits = 0;
  std::uint64_t total_bits = 0;
  double avg_bits_paper = 0.0;
  double avg_bits_total = 0.0;
  double compression_ratio = 0.0;

  std::uint64_t elements() const { return rows * cols; }
  Fraction paper_bits_exact() const { return Fraction::reduced(codebook_bits + factor_bits, elements()); }
  Fraction codebook_bits_exact() const { return Fraction::reduced(codebook_bits, elements()); }
  Fraction factor_bits_exact() const { return Fraction::reduced(factor_bits, elements()); }
  Fraction total_bits_exact() const { return Fraction::reduced(total_bits, elements()); }
  Fraction compression_ratio_exact() const;
};

/// Bits needed to address k clusters: ceil(log2 k), 0 for k = 1.
unsigned label_width(std::uint64_t k);

/// Storage accounting for an m x n matrix with k clusters and rank-r factors.
/// With include_labels unset, label_bits is 0 and both averages coincide.
/// Throws ParameterError for k < 1, empty shapes, or value_bits not 16/32.
StorageReport avg_bits(std::uint64_t m, std::uint64_t n, std::uint64_t k, std::uint64_t r, unsigned value_bits,
                       bool include_labels = true);

StorageReport storage_report(const CompressedWeight& c);

/// Mean squared element difference. Throws ShapeError on mismatch.
double mse(const Matrix& a, const Matrix& b);

/// |a - b|_F / |a|_F, or |a - b|_F when a is zero.
double relative_frobenius_error(const Matrix& a, const Matrix& b);

/// m x n matrix whose column j is center (j mod k_true) plus N(0, noise_sigma^2)
/// noise. Centers are standard normal. Deterministic in `seed`.
/// Throws ParameterError on empty shapes, k_true outside [1, n], or negative noise.
Matrix gen_synthetic(std::size_t m, std::size_t n, std::size_t k_true, double noise_sigma, std::uint64_t seed);

/// Generating labels of gen_synthetic: j mod k_true.
std::vector<std::uint32_t> synthetic_labels(std::size_t n, std::size_t k_true);

struct ComparisonReport {
  double swsc_mse = 0.0;
  double rtn_mse = 0.0;
  double swsc_frobenius_rel = 0.0;
  double rtn_frobenius_rel = 0.0;
  double swsc_avg_bits = 0.0;
  double rtn_avg_bits = 0.0;
  std::uint64_t k = 0;
  std::uint64_t r = 0;
  std::uint64_t seed = 0;
  int bits = 0;
  Granularity granularity = Granularity::per_column;
  Precision dtype = Precision::f16;
  /// swsc_avg_bits - rtn_avg_bits for the (k, r) actually run.
  double budget_gap = 0.0;
  /// Grid point (k and r powers of two, r may be 0) whose avg_bits_paper is
  /// closest to rtn_avg_bits.
  std::uint64_t matched_k = 0;
  std::uint64_t matched_r = 0;
  double matched_avg_bits = 0.0;
  double matched_gap = 0.0;
};

struct MatchedBudget {
  std::uint64_t k;
  std::uint64_t r;
  double avg_bits;
};

/// Closest power-of-two (k, r) grid point to `target_bits` in avg_bits_paper.
/// Ties keep the smaller k, then the smaller r.
MatchedBudget matched_budget(std::uint64_t m, std::uint64_t n, double target_bits, unsigned value_bits);

struct CompareOptions {
  Precision dtype = Precision::f16;
  CompressOptions compress;
};

/// Runs SWSC and RTN on the same matrix and reports both errors and budgets.
ComparisonReport compare(const Matrix& w, std::size_t k, std::size_t r, std::uint64_t seed, int rtn_bits,
                         Granularity granularity, const CompareOptions& opts = {});

/// `key=value` lines, keys named after the report fields.
void write_key_values(std::ostream& os, const StorageReport& rep);
void write_key_values(std::ostream& os, const ComparisonReport& rep);
/// Aligned human-readable table.
void write_table(std::ostream& os, const StorageReport& rep);
void write_table(std::ostream& os, const ComparisonReport& rep);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace swsc
