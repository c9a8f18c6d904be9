#include "swsc/rtn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swsc/error.hpp"

namespace swsc {

const char* to_string(Granularity g) { return g == Granularity::per_tensor ? "per-tensor" : "per-column"; }

Granularity parse_granularity(std::string_view s) {
  if (s == "per-tensor") return Granularity::per_tensor;
  if (s == "per-column") return Granularity::per_column;
  throw ParameterError("unknown granularity '" + std::string(s) + "' (expected per-tensor or per-column)");
}

namespace {

struct Grid {
  double lo;
  double hi;
  double scale;
  double levels;  // 2^bits - 1

  double apply(double v) const {
    if (hi == lo) return lo;
    const double q = std::clamp(std::round((v - lo) / scale), 0.0, levels);
    if (q == 0.0) return lo;
    if (q == levels) return hi;
    return lo + q * scale;
  }
};

template <class Range>
Grid grid_of(const Range& values, int bits) {
  auto [lo, hi] = std::ranges::minmax(values);
  const double levels = std::ldexp(1.0, bits) - 1.0;
  return {lo, hi, (hi - lo) / levels, levels};
}

}  // namespace

Matrix rtn_quantize_dequantize(const Matrix& w, const RtnConfig& cfg) {
  if (cfg.bits < 2 || cfg.bits > 8) {
    throw ParameterError("rtn: bits " + std::to_string(cfg.bits) + " outside [2, 8]");
  }
  Matrix out(w.rows(), w.cols());
  if (w.empty()) return out;

  if (cfg.granularity == Granularity::per_tensor) {
    const Grid g = grid_of(w.values(), cfg.bits);
    auto src = w.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = g.apply(src[i]);
    return out;
  }
  for (std::size_t j = 0; j < w.cols(); ++j) {
    const Grid g = grid_of(w.column(j), cfg.bits);
    for (std::size_t i = 0; i < w.rows(); ++i) out(i, j) = g.apply(w(i, j));
  }
  return out;
}

}  // namespace swsc
