#include "swsc/half.hpp"

#include <cmath>
#include <limits>

namespace swsc {

const char* to_string(Precision p) { return p == Precision::f16 ? "f16" : "f32"; }

unsigned bits_of(Precision p) { return p == Precision::f16 ? 16u : 32u; }

double round_to_half(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  const double mag = std::abs(v);
  // Spacing of binary16 values around `mag`: 2^(e-10) for normals, 2^-24 below 2^-14.
  int exp = std::ilogb(mag);
  if (exp < -14) exp = -14;
  const double ulp = std::ldexp(1.0, exp - 10);
  // nearbyint honors the default round-to-nearest-even mode; mag / ulp is exact.
  const double rounded = std::nearbyint(mag / ulp) * ulp;
  if (rounded > 65504.0) return std::copysign(std::numeric_limits<double>::infinity(), v);
  return std::copysign(rounded, v);
}

double round_to_float(double v) { return static_cast<double>(static_cast<float>(v)); }

double round_to(Precision p, double v) { return p == Precision::f16 ? round_to_half(v) : round_to_float(v); }

std::uint16_t half_bits(double v) {
  const double h = round_to_half(v);
  const std::uint16_t sign = std::signbit(h) ? 0x8000u : 0u;
  if (std::isnan(h)) return 0x7e00u;
  if (std::isinf(h)) return sign | 0x7c00u;
  const double mag = std::abs(h);
  if (mag == 0.0) return sign;
  const int exp = std::ilogb(mag);
  if (exp < -14) {
    // Subnormal: mantissa counts multiples of 2^-24.
    return sign | static_cast<std::uint16_t>(std::ldexp(mag, 24));
  }
  const auto mantissa = static_cast<std::uint16_t>(std::ldexp(mag, 10 - exp) - 1024.0);
  return sign | static_cast<std::uint16_t>((exp + 15) << 10) | mantissa;
}

double half_from_bits(std::uint16_t bits) {
  const double sign = (bits & 0x8000u) ? -1.0 : 1.0;
  const int exp = (bits >> 10) & 0x1f;
  const int mantissa = bits & 0x3ff;
  if (exp == 0) return sign * std::ldexp(mantissa, -24);
  if (exp == 31) return mantissa == 0 ? sign * std::numeric_limits<double>::infinity()
                                      : std::numeric_limits<double>::quiet_NaN();
  return sign * std::ldexp(1024 + mantissa, exp - 25);
}

}  // namespace swsc
