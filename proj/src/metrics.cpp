#include "swsc/metrics.hpp"

#include <charconv>
#include <cmath>
#include <algorithm>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "swsc/error.hpp"

namespace swsc {

Fraction Fraction::reduced(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw ParameterError("fraction with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

Fraction StorageReport::compression_ratio_exact() const {
  return Fraction::reduced(k * rows + cols + r * (rows + cols), elements());
}

unsigned label_width(std::uint64_t k) {
  unsigned w = 0;
  while (w < 64 && (std::uint64_t{1} << w) < k) ++w;
  return w;
}

StorageReport avg_bits(std::uint64_t m, std::uint64_t n, std::uint64_t k, std::uint64_t r, unsigned value_bits,
                       bool include_labels) {
  if (m == 0 || n == 0) throw ParameterError("avg_bits: matrix shape must be non-empty");
  if (k < 1) throw ParameterError("avg_bits: cluster count must be at least 1");
  if (value_bits != 16 && value_bits != 32) {
    throw ParameterError("avg_bits: value width must be 16 or 32 bits, got " + std::to_string(value_bits));
  }
  StorageReport rep;
  rep.rows = m;
  rep.cols = n;
  rep.k = k;
  rep.r = r;
  rep.value_bits = value_bits;
  rep.codebook_bits = k * m * value_bits;
  rep.factor_bits = (m + n) * r * value_bits;
  rep.label_bits = include_labels ? n * label_width(k) : 0;
  rep.total_bits = rep.codebook_bits + rep.factor_bits + rep.label_bits;
  const double elements = static_cast<double>(m * n);
  rep.avg_bits_paper = static_cast<double>(rep.codebook_bits + rep.factor_bits) / elements;
  rep.avg_bits_total = static_cast<double>(rep.total_bits) / elements;
  rep.compression_ratio = static_cast<double>(k * m + n + r * (m + n)) / elements;
  return rep;
}

StorageReport storage_report(const CompressedWeight& c) {
  return avg_bits(c.rows, c.cols, c.clustering.k, c.factors.rank, bits_of(c.precision));
}

double mse(const Matrix& a, const Matrix& b) {
  const Matrix d = subtract(a, b);
  if (d.empty()) return 0.0;
  double s = 0.0;
  for (double v : d.values()) s += v * v;
  return s / static_cast<double>(d.size());
}

double relative_frobenius_error(const Matrix& a, const Matrix& b) {
  const double err = frobenius_norm(subtract(a, b));
  const double ref = frobenius_norm(a);
  return ref == 0.0 ? err : err / ref;
}

MatchedBudget matched_budget(std::uint64_t m, std::uint64_t n, double target_bits, unsigned value_bits) {
  MatchedBudget best{0, 0, 0.0};
  double best_gap = std::numeric_limits<double>::infinity();
  const std::uint64_t max_r = std::min(m, n);
  for (std::uint64_t k = 1; k <= n; k *= 2) {
    for (std::uint64_t r = 0; r <= max_r; r = (r == 0 ? 1 : r * 2)) {
      const double bits = avg_bits(m, n, k, r, value_bits, false).avg_bits_paper;
      const double gap = std::abs(bits - target_bits);
      if (gap < best_gap) {
        best_gap = gap;
        best = {k, r, bits};
      }
    }
  }
  return best;
}

ComparisonReport compare(const Matrix& w, std::size_t k, std::size_t r, std::uint64_t seed, int rtn_bits,
                         Granularity granularity, const CompareOptions& opts) {
  const CompressedWeight c = compress(w, k, r, seed, opts.dtype, opts.compress);
  const Matrix swsc = decompress(c, opts.compress.threads);
  const Matrix rtn = rtn_quantize_dequantize(w, {rtn_bits, granularity});

  ComparisonReport rep;
  rep.swsc_mse = mse(w, swsc);
  rep.rtn_mse = mse(w, rtn);
  rep.swsc_frobenius_rel = relative_frobenius_error(w, swsc);
  rep.rtn_frobenius_rel = relative_frobenius_error(w, rtn);
  rep.swsc_avg_bits = storage_report(c).avg_bits_paper;
  rep.rtn_avg_bits = rtn_bits;
  rep.k = k;
  rep.r = r;
  rep.seed = seed;
  rep.bits = rtn_bits;
  rep.granularity = granularity;
  rep.dtype = opts.dtype;
  rep.budget_gap = rep.swsc_avg_bits - rep.rtn_avg_bits;
  const MatchedBudget mb = matched_budget(w.rows(), w.cols(), rtn_bits, bits_of(opts.dtype));
  rep.matched_k = mb.k;
  rep.matched_r = mb.r;
  rep.matched_avg_bits = mb.avg_bits;
  rep.matched_gap = mb.avg_bits - rep.rtn_avg_bits;
  return rep;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_key_values(std::ostream& os, const StorageReport& rep) {
  os << "rows=" << rep.rows << '\n'
     << "cols=" << rep.cols << '\n'
     << "k=" << rep.k << '\n'
     << "r=" << rep.r << '\n'
     << "value_bits=" << rep.value_bits << '\n'
     << "codebook_bits=" << rep.codebook_bits << '\n'
     << "factor_bits=" << rep.factor_bits << '\n'
     << "label_bits=" << rep.label_bits << '\n'
     << "total_bits=" << rep.total_bits << '\n'
     << "avg_bits_paper=" << format_double(rep.avg_bits_paper) << '\n'
     << "avg_bits_total=" << format_double(rep.avg_bits_total) << '\n'
     << "compression_ratio=" << format_double(rep.compression_ratio) << '\n';
}

void write_key_values(std::ostream& os, const ComparisonReport& rep) {
  os << "swsc_mse=" << format_double(rep.swsc_mse) << '\n'
     << "rtn_mse=" << format_double(rep.rtn_mse) << '\n'
     << "swsc_frobenius_rel=" << format_double(rep.swsc_frobenius_rel) << '\n'
     << "rtn_frobenius_rel=" << format_double(rep.rtn_frobenius_rel) << '\n'
     << "swsc_avg_bits=" << format_double(rep.swsc_avg_bits) << '\n'
     << "rtn_avg_bits=" << format_double(rep.rtn_avg_bits) << '\n'
     << "k=" << rep.k << '\n'
     << "r=" << rep.r << '\n'
     << "seed=" << rep.seed << '\n'
     << "bits=" << rep.bits << '\n'
     << "granularity=" << to_string(rep.granularity) << '\n'
     << "dtype=" << to_string(rep.dtype) << '\n'
     << "budget_gap=" << format_double(rep.budget_gap) << '\n'
     << "matched_k=" << rep.matched_k << '\n'
     << "matched_r=" << rep.matched_r << '\n'
     << "matched_avg_bits=" << format_double(rep.matched_avg_bits) << '\n'
     << "matched_gap=" << format_double(rep.matched_gap) << '\n';
}

namespace {

template <class T>
void row(std::ostream& os, const char* label, const T& value) {
  os << "  " << std::left << std::setw(26) << label << value << '\n';
}

}  // namespace

void write_table(std::ostream& os, const StorageReport& rep) {
  os << "storage " << rep.rows << "x" << rep.cols << ", k=" << rep.k << ", r=" << rep.r << ", " << rep.value_bits
     << "-bit values\n";
  row(os, "codebook bits", rep.codebook_bits);
  row(os, "factor bits", rep.factor_bits);
  row(os, "label bits", rep.label_bits);
  row(os, "total bits", rep.total_bits);
  row(os, "avg bits (values only)", format_double(rep.avg_bits_paper));
  row(os, "avg bits (with labels)", format_double(rep.avg_bits_total));
  row(os, "compression ratio", format_double(rep.compression_ratio));
}

void write_table(std::ostream& os, const ComparisonReport& rep) {
  os << "method  avg_bits        mse                     frobenius_rel\n";
  os << "swsc    " << std::left << std::setw(16) << format_double(rep.swsc_avg_bits) << std::setw(24)
     << format_double(rep.swsc_mse) << format_double(rep.swsc_frobenius_rel) << '\n';
  os << "rtn     " << std::left << std::setw(16) << format_double(rep.rtn_avg_bits) << std::setw(24)
     << format_double(rep.rtn_mse) << format_double(rep.rtn_frobenius_rel) << '\n';
  os << "swsc: k=" << rep.k << " r=" << rep.r << " seed=" << rep.seed << " dtype=" << to_string(rep.dtype)
     << "; rtn: bits=" << rep.bits << " " << to_string(rep.granularity) << '\n';
  os << "closest power-of-two budget to " << rep.bits << " bits: k=" << rep.matched_k << " r=" << rep.matched_r
     << " (" << format_double(rep.matched_avg_bits) << " bits, gap " << format_double(rep.matched_gap) << ")\n";
}

}  // namespace swsc
