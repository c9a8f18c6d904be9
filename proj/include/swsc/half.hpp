#pragma once

#include <cstdint>

namespace swsc {

/// Storage width for codebook values and low-rank factors.
enum class Precision : std::uint8_t { f32 = 0, f16 = 1 };

const char* to_string(Precision p);
unsigned bits_of(Precision p);

/// Nearest IEEE binary16 value (round half to even), returned widened.
/// Magnitudes beyond the binary16 range round to infinity.
double round_to_half(double v);

/// Nearest binary32 value (round half to even), returned widened.
double round_to_float(double v);

/// Rounds to the given storage width.
double round_to(Precision p, double v);

/// binary16 bit pattern of `v` after round-half-even narrowing.
std::uint16_t half_bits(double v);

/// Exact widening of a binary16 bit pattern.
double half_from_bits(std::uint16_t bits);

}  // namespace swsc
