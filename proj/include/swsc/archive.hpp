#pragma once

// On-disk formats. All integers and floats are little-endian.
//
// Weight file (32-byte header):
//   0  "WMAT"
//   4  u32 version = 1
//   8  u64 rows
//   16 u64 cols
//   24 u8  dtype (0 = binary32, 1 = binary16)
//   25 7 zero bytes
//   32 rows*cols values, row-major
//
// SWSC archive (48-byte header):
//   0  "SWSC"
//   4  u32 version = 1
//   8  u64 rows
//   16 u64 cols
//   24 u32 k
//   28 u32 r
//   32 u8  value dtype (0 = binary32, 1 = binary16)
//   33 u8  label width in bits (always 16)
//   34 6 zero bytes
//   40 u64 seed
//   48 labels      cols x u16
//      centroids   k*rows values, centroid after centroid
//      a_factor    rows*r values, row-major
//      b_factor    r*cols values, row-major
//      sigma       r x binary32
// Nothing may follow the last section.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "swsc/compressor.hpp"
#include "swsc/half.hpp"
#include "swsc/matrix.hpp"

namespace swsc {

inline constexpr std::size_t kWeightHeaderBytes = 32;
inline constexpr std::size_t kArchiveHeaderBytes = 48;
inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr std::uint8_t kLabelWidthBits = 16;
inline constexpr std::size_t kMaxClusters = 65535;

struct WeightFile {
  Matrix values;
  Precision dtype = Precision::f32;
};

struct ArchiveHeader {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::uint32_t k = 0;
  std::uint32_t r = 0;
  Precision dtype = Precision::f32;
  std::uint64_t seed = 0;
};

/// Values are narrowed to `dtype` with round-half-even. Throws NumericalError
/// when a value overflows binary16.
std::vector<std::uint8_t> encode_weight(const Matrix& w, Precision dtype);
/// Throws FormatError on bad magic, version, dtype, padding, length, or
/// non-finite payload values.
WeightFile decode_weight(std::span<const std::uint8_t> bytes);

std::uint64_t archive_size(const ArchiveHeader& h);
/// Throws ParameterError when k exceeds kMaxClusters, IntegrityError when the
/// parts disagree.
std::vector<std::uint8_t> encode_archive(const CompressedWeight& c);
/// Throws FormatError for malformed bytes and IntegrityError for a
/// well-formed archive whose contents are inconsistent (labels out of range,
/// empty clusters).
CompressedWeight decode_archive(std::span<const std::uint8_t> bytes);
/// Parses the header only. `total_bytes` is the full archive length, checked
/// against the header's section sizes.
ArchiveHeader decode_archive_header(std::span<const std::uint8_t> header, std::uint64_t total_bytes);

void write_weight(const std::filesystem::path& path, const Matrix& w, Precision dtype = Precision::f32);
WeightFile read_weight(const std::filesystem::path& path);

void write_archive(const std::filesystem::path& path, const CompressedWeight& c);
CompressedWeight read_archive(const std::filesystem::path& path);
/// Reads only the header bytes; the payload length is checked against the file size.
ArchiveHeader read_archive_header(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place, so a failed
/// write never leaves a partial `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace swsc
