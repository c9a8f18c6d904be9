#pragma once

// Inputs for the checked-in golden files. Built from integer arithmetic and
// exact divisions only, so the bytes do not depend on the platform's libm or
// standard-library distributions.

#include <cstddef>
#include <cstdint>

#include "swsc/matrix.hpp"

namespace swsc::golden {

inline constexpr std::size_t kRows = 64;
inline constexpr std::size_t kCols = 64;
inline constexpr std::size_t kClusters = 8;
inline constexpr std::size_t kRank = 4;
inline constexpr std::uint64_t kSeed = 2024;

/// 64x64: eight interleaved column groups around integer-valued centers, plus
/// a small deterministic perturbation.
inline Matrix fixture_matrix() {
  Matrix w(kRows, kCols);
  for (std::size_t i = 0; i < kRows; ++i)
    for (std::size_t j = 0; j < kCols; ++j) {
      const std::size_t c = j % kClusters;
      const double center = static_cast<double>(static_cast<int>((i * 7 + c * 13) % 17) - 8) / 4.0;
      const double wobble = static_cast<double>(static_cast<int>((i * 31 + j * 17) % 11) - 5) / 1024.0;
      w(i, j) = center + wobble;
    }
  return w;
}

/// The 3x2 matrix [[1, 2], [3, 4], [5, 6]].
inline Matrix small_matrix() { return Matrix::from_rows({{1, 2}, {3, 4}, {5, 6}}); }

}  // namespace swsc::golden
