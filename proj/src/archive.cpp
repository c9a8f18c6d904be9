#include "swsc/archive.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>

#include "swsc/error.hpp"

namespace swsc {

namespace {

constexpr char kWeightMagic[4] = {'W', 'M', 'A', 'T'};
constexpr char kArchiveMagic[4] = {'S', 'W', 'S', 'C'};

class ByteWriter {
 public:
  explicit ByteWriter(std::size_t reserve) { out_.reserve(reserve); }

  void bytes(const char* p, std::size_t n) { out_.insert(out_.end(), p, p + n); }
  void zeros(std::size_t n) { out_.insert(out_.end(), n, 0); }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { little_endian(v, 2); }
  void u32(std::uint32_t v) { little_endian(v, 4); }
  void u64(std::uint64_t v) { little_endian(v, 8); }
  void value(double v, Precision p) {
    if (p == Precision::f16) {
      const std::uint16_t bits = half_bits(v);
      if ((bits & 0x7c00u) == 0x7c00u) throw NumericalError("value " + std::to_string(v) + " overflows binary16");
      u16(bits);
    } else {
      u32(std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
  }

  std::vector<std::uint8_t> take() && { return std::move(out_); }

 private:
  void little_endian(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }

  void need(std::size_t n, const char* what) const {
    if (remaining() < n) throw FormatError(std::string("truncated ") + what, pos_);
  }
  void magic(const char (&expected)[4]) {
    need(4, "magic");
    if (std::memcmp(in_.data() + pos_, expected, 4) != 0) {
      throw FormatError("bad magic, expected '" + std::string(expected, 4) + "'", pos_);
    }
    pos_ += 4;
  }
  void zeros(std::size_t n) {
    need(n, "padding");
    for (std::size_t i = 0; i < n; ++i, ++pos_)
      if (in_[pos_] != 0) throw FormatError("non-zero padding byte", pos_);
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(little_endian(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(little_endian(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(little_endian(4)); }
  std::uint64_t u64() { return little_endian(8); }
  double value(Precision p) {
    const std::size_t at = pos_;
    const double v = p == Precision::f16 ? half_from_bits(u16())
                                         : static_cast<double>(std::bit_cast<float>(u32()));
    if (!std::isfinite(v)) throw FormatError("non-finite value", at);
    return v;
  }
  Matrix matrix(std::size_t rows, std::size_t cols, Precision p) {
    std::vector<double> values(rows * cols);
    for (double& v : values) v = value(p);
    return Matrix(rows, cols, std::move(values));
  }

 private:
  std::uint64_t little_endian(int n) {
    need(static_cast<std::size_t>(n), "integer field");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t at) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw FormatError("section size overflows", at);
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, std::uint64_t at) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw FormatError("section size overflows", at);
  return out;
}

Precision decode_dtype(std::uint8_t code, std::size_t at) {
  if (code == 0) return Precision::f32;
  if (code == 1) return Precision::f16;
  throw FormatError("unknown dtype code " + std::to_string(code), at);
}

std::size_t value_bytes(Precision p) { return p == Precision::f16 ? 2 : 4; }

ArchiveHeader parse_archive_header(ByteReader& in) {
  in.magic(kArchiveMagic);
  const std::size_t version_at = in.offset();
  if (const auto v = in.u32(); v != kFormatVersion) {
    throw FormatError("unsupported archive version " + std::to_string(v), version_at);
  }
  ArchiveHeader h;
  h.rows = in.u64();
  h.cols = in.u64();
  h.k = in.u32();
  h.r = in.u32();
  const std::uint8_t dtype_code = in.u8();
  h.dtype = decode_dtype(dtype_code, in.offset() - 1);
  if (const auto w = in.u8(); w != kLabelWidthBits) {
    throw FormatError("unsupported label width " + std::to_string(w), in.offset() - 1);
  }
  in.zeros(6);
  h.seed = in.u64();
  if (h.rows == 0 || h.cols == 0) throw FormatError("archive declares an empty matrix", 8);
  return h;
}

}  // namespace

std::vector<std::uint8_t> encode_weight(const Matrix& w, Precision dtype) {
  ByteWriter out(kWeightHeaderBytes + w.size() * value_bytes(dtype));
  out.bytes(kWeightMagic, 4);
  out.u32(kFormatVersion);
  out.u64(w.rows());
  out.u64(w.cols());
  out.u8(static_cast<std::uint8_t>(dtype));
  out.zeros(7);
  for (double v : w.values()) out.value(v, dtype);
  return std::move(out).take();
}

WeightFile decode_weight(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  in.magic(kWeightMagic);
  if (const auto v = in.u32(); v != kFormatVersion) {
    throw FormatError("unsupported weight file version " + std::to_string(v), 4);
  }
  const std::uint64_t rows = in.u64();
  const std::uint64_t cols = in.u64();
  const Precision dtype = decode_dtype(in.u8(), 24);
  in.zeros(7);
  if (rows == 0 || cols == 0) throw FormatError("weight file declares an empty matrix", 8);
  const std::uint64_t payload = checked_mul(checked_mul(rows, cols, 8), value_bytes(dtype), 8);
  if (in.remaining() < payload) throw FormatError("truncated payload", in.offset());
  if (in.remaining() > payload) throw FormatError("trailing bytes after payload", in.offset() + payload);
  return {in.matrix(rows, cols, dtype), dtype};
}

std::uint64_t archive_size(const ArchiveHeader& h) {
  const std::uint64_t vb = value_bytes(h.dtype);
  std::uint64_t values = checked_mul(h.k, h.rows, 24);
  values = checked_add(values, checked_mul(h.rows, h.r, 28), 28);
  values = checked_add(values, checked_mul(h.r, h.cols, 28), 28);
  std::uint64_t total = checked_add(kArchiveHeaderBytes, checked_mul(h.cols, 2, 16), 16);
  total = checked_add(total, checked_mul(values, vb, 32), 32);
  return checked_add(total, checked_mul(h.r, 4, 28), 28);
}

std::vector<std::uint8_t> encode_archive(const CompressedWeight& c) {
  if (c.clustering.k > kMaxClusters) {
    throw ParameterError("archive: k=" + std::to_string(c.clustering.k) + " exceeds the 16-bit label range");
  }
  if (c.factors.rank > 0xffffffffu) throw ParameterError("archive: rank does not fit 32 bits");
  validate(c);
  const ArchiveHeader h{c.rows, c.cols, static_cast<std::uint32_t>(c.clustering.k),
                        static_cast<std::uint32_t>(c.factors.rank), c.precision, c.seed};
  ByteWriter out(archive_size(h));
  out.bytes(kArchiveMagic, 4);
  out.u32(kFormatVersion);
  out.u64(h.rows);
  out.u64(h.cols);
  out.u32(h.k);
  out.u32(h.r);
  out.u8(static_cast<std::uint8_t>(h.dtype));
  out.u8(kLabelWidthBits);
  out.zeros(6);
  out.u64(h.seed);
  for (auto label : c.clustering.labels) out.u16(static_cast<std::uint16_t>(label));
  for (double v : c.clustering.centroids.values()) out.value(v, c.precision);
  for (double v : c.factors.a_factor.values()) out.value(v, c.precision);
  for (double v : c.factors.b_factor.values()) out.value(v, c.precision);
  for (double s : c.factors.retained_singular_values) out.u32(std::bit_cast<std::uint32_t>(static_cast<float>(s)));
  return std::move(out).take();
}

ArchiveHeader decode_archive_header(std::span<const std::uint8_t> header, std::uint64_t total_bytes) {
  ByteReader in(header);
  const ArchiveHeader h = parse_archive_header(in);
  const std::uint64_t expected = archive_size(h);
  if (total_bytes < expected) throw FormatError("truncated archive", total_bytes);
  if (total_bytes > expected) throw FormatError("trailing bytes after archive", expected);
  return h;
}

CompressedWeight decode_archive(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const ArchiveHeader h = decode_archive_header(bytes, bytes.size());
  parse_archive_header(in);

  CompressedWeight c;
  c.rows = h.rows;
  c.cols = h.cols;
  c.precision = h.dtype;
  c.seed = h.seed;
  c.clustering.k = h.k;
  c.clustering.labels.resize(h.cols);
  for (auto& label : c.clustering.labels) label = in.u16();
  c.clustering.centroids = in.matrix(h.k, h.rows, h.dtype);
  c.factors.rank = h.r;
  c.factors.a_factor = in.matrix(h.rows, h.r, h.dtype);
  c.factors.b_factor = in.matrix(h.r, h.cols, h.dtype);
  c.factors.retained_singular_values.resize(h.r);
  for (double& s : c.factors.retained_singular_values) s = in.value(Precision::f32);
  try {
    validate(c);
  } catch (const ShapeError& e) {
    throw IntegrityError(e.what());
  }
  return c;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("error while writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

void write_weight(const std::filesystem::path& path, const Matrix& w, Precision dtype) {
  write_file_atomic(path, encode_weight(w, dtype));
}

WeightFile read_weight(const std::filesystem::path& path) { return decode_weight(read_file(path)); }

void write_archive(const std::filesystem::path& path, const CompressedWeight& c) {
  write_file_atomic(path, encode_archive(c));
}

CompressedWeight read_archive(const std::filesystem::path& path) { return decode_archive(read_file(path)); }

ArchiveHeader read_archive_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> header(kArchiveHeaderBytes);
  in.read(reinterpret_cast<char*>(header.data()), static_cast<std::streamsize>(header.size()));
  header.resize(static_cast<std::size_t>(in.gcount()));
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat '" + path.string() + "'");
  return decode_archive_header(header, size);
}

}  // namespace swsc
