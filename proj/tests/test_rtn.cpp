#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "swsc/error.hpp"
#include "swsc/metrics.hpp"
#include "swsc/rtn.hpp"

namespace swsc {
namespace {

TEST(Rtn, OnGridColumnIsExact) {
  const Matrix w = Matrix::from_rows({{0}, {1}, {2}, {3}});
  EXPECT_EQ(rtn_quantize_dequantize(w, {2, Granularity::per_column}), w);
}

TEST(Rtn, ConstantMatrixIsExact) {
  const Matrix w = Matrix::from_rows({{0.3, 0.3}, {0.3, 0.3}});
  for (int bits = 2; bits <= 8; ++bits) {
    EXPECT_EQ(rtn_quantize_dequantize(w, {bits, Granularity::per_tensor}), w);
    EXPECT_EQ(rtn_quantize_dequantize(w, {bits, Granularity::per_column}), w);
  }
}

TEST(Rtn, OutlierColumnMatchesScalarOracle) {
  const Matrix w = Matrix::from_rows({{0}, {0.1}, {0.2}, {10}});
  const Matrix q = rtn_quantize_dequantize(w, {2, Granularity::per_column});
  EXPECT_EQ(q, Matrix::from_rows({{0}, {0}, {0}, {10}}));
  Matrix expected(4, 1);
  for (std::size_t i = 0; i < 4; ++i) expected(i, 0) = oracle::nearest_grid_point(w(i, 0), 0.0, 10.0, 2);
  EXPECT_EQ(mse(w, q), mse(w, expected));
}

TEST(Rtn, RandomMatricesMatchScalarOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix w = oracle::random_matrix(9, 6, seed);
    const int bits = 2 + static_cast<int>(seed % 7);
    const Matrix per_col = rtn_quantize_dequantize(w, {bits, Granularity::per_column});
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const auto col = w.column(j);
      const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
      for (std::size_t i = 0; i < w.rows(); ++i)
        EXPECT_NEAR(per_col(i, j), oracle::nearest_grid_point(w(i, j), *lo, *hi, bits), 1e-12);
    }
    const Matrix per_tensor = rtn_quantize_dequantize(w, {bits, Granularity::per_tensor});
    const auto [lo, hi] = std::minmax_element(w.values().begin(), w.values().end());
    for (std::size_t i = 0; i < w.size(); ++i)
      EXPECT_NEAR(per_tensor.values()[i], oracle::nearest_grid_point(w.values()[i], *lo, *hi, bits), 1e-12);
  }
}

TEST(Rtn, IdempotentBitwise) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix w = oracle::random_matrix(7, 5, seed);
    for (auto g : {Granularity::per_tensor, Granularity::per_column}) {
      const RtnConfig cfg{2 + static_cast<int>(seed % 7), g};
      const Matrix once = rtn_quantize_dequantize(w, cfg);
      EXPECT_EQ(rtn_quantize_dequantize(once, cfg), once);
    }
  }
}

TEST(Rtn, ErrorBoundedByHalfStep) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix w = oracle::random_matrix(11, 4, seed);
    const int bits = 2 + static_cast<int>(seed % 4);
    const Matrix q = rtn_quantize_dequantize(w, {bits, Granularity::per_column});
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const auto col = w.column(j);
      const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
      const double scale = (*hi - *lo) / (std::ldexp(1.0, bits) - 1.0);
      for (std::size_t i = 0; i < w.rows(); ++i) EXPECT_LE(std::abs(q(i, j) - w(i, j)), scale / 2 * (1 + 1e-12));
    }
  }
}

TEST(Rtn, FewOnGridValuesAreExact) {
  // Eight distinct values on the 3-bit grid over [-1, 2.5].
  Matrix w(8, 1);
  for (std::size_t i = 0; i < 8; ++i) w(i, 0) = -1.0 + 0.5 * static_cast<double>(i);
  EXPECT_EQ(rtn_quantize_dequantize(w, {3, Granularity::per_column}), w);
}

TEST(Rtn, BitRange) {
  const Matrix w = oracle::random_matrix(2, 2, 1);
  EXPECT_THROW(rtn_quantize_dequantize(w, {1, Granularity::per_column}), ParameterError);
  EXPECT_THROW(rtn_quantize_dequantize(w, {9, Granularity::per_tensor}), ParameterError);
}

TEST(Rtn, GranularityNames) {
  EXPECT_EQ(parse_granularity("per-tensor"), Granularity::per_tensor);
  EXPECT_EQ(parse_granularity("per-column"), Granularity::per_column);
  EXPECT_THROW(parse_granularity("per-row"), ParameterError);
  EXPECT_STREQ(to_string(Granularity::per_column), "per-column");
}

}  // namespace
}  // namespace swsc
