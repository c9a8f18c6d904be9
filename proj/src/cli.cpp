#include "swsc/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>

#include "swsc/archive.hpp"
#include "swsc/compressor.hpp"
#include "swsc/error.hpp"
#include "swsc/metrics.hpp"
#include "swsc/rtn.hpp"

namespace swsc {

namespace {

Precision parse_dtype(const std::string& s) { return s == "f16" ? Precision::f16 : Precision::f32; }

struct CompressArgs {
  std::string input;
  std::string output;
  std::size_t clusters = 0;
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  std::string dtype = "f16";
  std::size_t max_iter = 100;
  double tol = 1e-6;
  std::size_t restarts = 1;
  unsigned threads = 1;
};

struct DecompressArgs {
  std::string input;
  std::string output;
  std::string dtype = "f32";
  unsigned threads = 1;
};

struct CompareArgs {
  std::string input;
  std::size_t clusters = 0;
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  int rtn_bits = 3;
  std::string granularity = "per-column";
  std::string dtype = "f16";
  std::size_t max_iter = 100;
  double tol = 1e-6;
  std::size_t restarts = 1;
  unsigned threads = 1;
};

struct GenArgs {
  std::string output;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t true_clusters = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string dtype = "f32";
};

void add_kmeans_flags(CLI::App* cmd, std::size_t& max_iter, double& tol, std::size_t& restarts, unsigned& threads) {
  cmd->add_option("--max-iter", max_iter, "Lloyd iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--tol", tol, "Centroid movement threshold")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--restarts", restarts, "Seeded k-means++ initializations; best objective kept")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", threads, "Worker threads (output does not depend on this)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

CompressOptions compress_options(std::size_t max_iter, double tol, std::size_t restarts, unsigned threads) {
  CompressOptions opts;
  opts.kmeans.max_iter = max_iter;
  opts.kmeans.tol = tol;
  opts.kmeans.restarts = restarts;
  opts.threads = threads;
  return opts;
}

void print_storage(std::ostream& out, const StorageReport& rep) {
  write_table(out, rep);
  out << '\n';
  write_key_values(out, rep);
}

int cmd_compress(const CompressArgs& a, std::ostream& out) {
  const WeightFile in = read_weight(a.input);
  const CompressedWeight c = compress(in.values, a.clusters, a.rank, a.seed, parse_dtype(a.dtype),
                                      compress_options(a.max_iter, a.tol, a.restarts, a.threads));
  write_archive(a.output, c);
  print_storage(out, storage_report(c));
  return kExitOk;
}

int cmd_decompress(const DecompressArgs& a, std::ostream& out) {
  const CompressedWeight c = read_archive(a.input);
  write_weight(a.output, decompress(c, a.threads), parse_dtype(a.dtype));
  out << "wrote " << c.rows << "x" << c.cols << " " << a.dtype << " matrix to " << a.output << '\n';
  return kExitOk;
}

int cmd_stats(const std::string& path, std::ostream& out) {
  const ArchiveHeader h = read_archive_header(path);
  print_storage(out, avg_bits(h.rows, h.cols, h.k, h.r, bits_of(h.dtype)));
  return kExitOk;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const WeightFile in = read_weight(a.input);
  CompareOptions opts;
  opts.dtype = parse_dtype(a.dtype);
  opts.compress = compress_options(a.max_iter, a.tol, a.restarts, a.threads);
  const ComparisonReport rep =
      compare(in.values, a.clusters, a.rank, a.seed, a.rtn_bits, parse_granularity(a.granularity), opts);
  write_table(out, rep);
  out << '\n';
  write_key_values(out, rep);
  return kExitOk;
}

int cmd_gen_synthetic(const GenArgs& a, std::ostream& out) {
  const Matrix w = gen_synthetic(a.rows, a.cols, a.true_clusters, a.noise, a.seed);
  write_weight(a.output, w, parse_dtype(a.dtype));
  out << "wrote " << a.rows << "x" << a.cols << " synthetic matrix to " << a.output << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shared-weight compression of dense weight matrices: channel k-means codebooks with low-rank "
               "residual compensation."};
  app.name("swsc");
  app.require_subcommand(1);

  CompressArgs ca;
  auto* compress_cmd = app.add_subcommand("compress", "Compress a weight file into an SWSC archive");
  compress_cmd->add_option("input", ca.input, "Weight file")->required();
  compress_cmd->add_option("output", ca.output, "Archive to write")->required();
  compress_cmd->add_option("--clusters,-k", ca.clusters, "Number of channel clusters")
      ->required()
      ->check(CLI::PositiveNumber);
  compress_cmd->add_option("--rank,-r", ca.rank, "Rank of the residual compensation")->capture_default_str();
  compress_cmd->add_option("--seed", ca.seed, "Clustering seed")->capture_default_str();
  compress_cmd->add_option("--dtype", ca.dtype, "Storage width of codebook and factors")
      ->check(CLI::IsMember({"f16", "f32"}))
      ->capture_default_str();
  add_kmeans_flags(compress_cmd, ca.max_iter, ca.tol, ca.restarts, ca.threads);

  DecompressArgs da;
  auto* decompress_cmd = app.add_subcommand("decompress", "Rebuild a weight file from an SWSC archive");
  decompress_cmd->add_option("input", da.input, "Archive")->required();
  decompress_cmd->add_option("output", da.output, "Weight file to write")->required();
  decompress_cmd->add_option("--dtype", da.dtype, "Value type of the output weight file")
      ->check(CLI::IsMember({"f16", "f32"}))
      ->capture_default_str();
  decompress_cmd->add_option("--threads", da.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string stats_path;
  auto* stats_cmd = app.add_subcommand("stats", "Print the storage report of an archive");
  stats_cmd->add_option("archive", stats_path, "Archive")->required();

  CompareArgs cm;
  auto* compare_cmd = app.add_subcommand("compare", "Compare SWSC against RTN quantization on one weight file");
  compare_cmd->add_option("input", cm.input, "Weight file")->required();
  compare_cmd->add_option("--clusters,-k", cm.clusters, "Number of channel clusters")
      ->required()
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--rank,-r", cm.rank, "Rank of the residual compensation")->capture_default_str();
  compare_cmd->add_option("--seed", cm.seed, "Clustering seed")->capture_default_str();
  compare_cmd->add_option("--rtn-bits", cm.rtn_bits, "RTN bit width")->check(CLI::Range(2, 8))->capture_default_str();
  compare_cmd->add_option("--granularity", cm.granularity, "RTN scale grouping")
      ->check(CLI::IsMember({"per-column", "per-tensor"}))
      ->capture_default_str();
  compare_cmd->add_option("--dtype", cm.dtype, "SWSC storage width")
      ->check(CLI::IsMember({"f16", "f32"}))
      ->capture_default_str();
  add_kmeans_flags(compare_cmd, cm.max_iter, cm.tol, cm.restarts, cm.threads);

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Write a synthetic clustered weight file");
  gen_cmd->add_option("output", ga.output, "Weight file to write")->required();
  gen_cmd->add_option("--rows", ga.rows, "Rows")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--cols", ga.cols, "Columns")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--true-clusters", ga.true_clusters, "Generating cluster count")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--noise", ga.noise, "Per-entry Gaussian noise standard deviation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen_cmd->add_option("--seed", ga.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--dtype", ga.dtype, "Value type of the weight file")
      ->check(CLI::IsMember({"f16", "f32"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "swsc: " << e.what() << '\n';
    const CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failed->help();
    return kExitUsage;
  }

  try {
    if (compress_cmd->parsed()) return cmd_compress(ca, out);
    if (decompress_cmd->parsed()) return cmd_decompress(da, out);
    if (stats_cmd->parsed()) return cmd_stats(stats_path, out);
    if (compare_cmd->parsed()) return cmd_compare(cm, out);
    if (gen_cmd->parsed()) return cmd_gen_synthetic(ga, out);
  } catch (const ParameterError& e) {
    err << "swsc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ShapeError& e) {
    err << "swsc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "swsc: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "swsc: " << e.what() << '\n';
    return kExitFormat;
  }
  return kExitUsage;
}

}  // namespace swsc
