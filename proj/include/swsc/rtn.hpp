#pragma once

#include <string_view>

#include "swsc/matrix.hpp"

namespace swsc {

enum class Granularity { per_tensor, per_column };

const char* to_string(Granularity g);
/// Parses "per-tensor" / "per-column". Throws ParameterError otherwise.
Granularity parse_granularity(std::string_view s);

/// Asymmetric min-max round-to-nearest quantization.
struct RtnConfig {
  int bits = 3;
  Granularity granularity = Granularity::per_column;
};

/// Quantizes each group (whole tensor or each column) onto the
/// 2^bits-level grid min + q * (max - min) / (2^bits - 1) and returns the
/// dequantized values. A constant group comes back unchanged. The grid
/// endpoints are returned as the exact group min and max, which makes the
/// operation a bitwise fixed point when repeated.
///
/// Throws ParameterError unless 2 <= bits <= 8.
Matrix rtn_quantize_dequantize(const Matrix& w, const RtnConfig& cfg);

}  // namespace swsc
