// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "golden_fixture.hpp"
#include "oracles.hpp"
#include "swsc/archive.hpp"
#include "swsc/cli.hpp"
#include "swsc/compressor.hpp"
#include "swsc/error.hpp"
#include "swsc/metrics.hpp"

#ifndef SWSC_GOLDEN_DIR
#error "SWSC_GOLDEN_DIR must point at tests/golden"
#endif

namespace {

using namespace swsc;
namespace fs = std::filesystem;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> check;
};

std::string fraction_str(const Fraction& f) { return std::to_string(f.num) + "/" + std::to_string(f.den); }

// Average bits of the budget table at m = n = 4096, exact.
Outcome budget_table() {
  std::ostringstream d;
  bool ok = true;
  const std::pair<std::uint64_t, Fraction> codebook[] = {{128, {1, 2}}, {256, {1, 1}}, {512, {2, 1}}};
  for (auto [k, want] : codebook) {
    const Fraction got = avg_bits(4096, 4096, k, 0, 16).paper_bits_exact();
    ok = ok && got == want;
    d << "k=" << k << ":" << fraction_str(got) << " ";
  }
  // k is at least 1, so the factor rows are checked on the factor share alone.
  const std::pair<std::uint64_t, Fraction> factors[] = {{64, {1, 2}}, {128, {1, 1}}, {256, {2, 1}}};
  for (auto [r, want] : factors) {
    const Fraction got = avg_bits(4096, 4096, 1, r, 16).factor_bits_exact();
    ok = ok && got == want;
    d << "r=" << r << ":" << fraction_str(got) << " ";
  }
  return {ok, d.str()};
}

Outcome codebook_ratio() {
  const Fraction f = avg_bits(4096, 4096, 256, 0, 16).compression_ratio_exact();
  const bool ok = f == Fraction::reduced(257, 4096) && f.num * 10 < f.den;
  return {ok, "ratio=" + fraction_str(f) + " (" + format_double(f.value()) + ")"};
}

Outcome round_trip_exactness() {
  bool ok = true;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Matrix w = oracle::random_matrix(64, 64, seed);
    for (double& v : w.values()) v = round_to_float(v);
    const CompressedWeight c = compress(w, 64, 0, seed, Precision::f32);
    ok = ok && decompress(decode_archive(encode_archive(c))) == w;
  }
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Matrix w = oracle::random_matrix(64, 64, 100 + seed);
    for (std::size_t k : {1u, 8u, 37u}) {
      const double rel = relative_frobenius_error(w, decompress(compress(w, k, 64, seed, Precision::f32)));
      worst = std::max(worst, rel);
    }
  }
  ok = ok && worst < 1e-4;
  return {ok, "k=n bitwise exact; worst full-rank rel err " + format_double(worst)};
}

Outcome eckart_young() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix err = oracle::random_matrix(16, 16, 1000 + seed);
    const auto sigma = oracle::singular_values(err);
    for (std::size_t r : {1u, 4u, 8u}) {
      const LowRankFactors f = compensate(err, r);
      const double got = frobenius_norm(subtract(err, matmul(f.a_factor, f.b_factor)));
      const double want = oracle::discarded_norm(sigma, r);
      worst = std::max(worst, std::abs(got - want) / want);
    }
  }
  return {worst <= 1e-4, "worst rel deviation " + format_double(worst)};
}

Outcome rank_monotonicity() {
  const Matrix w = gen_synthetic(64, 64, 8, 0.01, 77);
  std::ostringstream d;
  bool ok = true;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t r : {0u, 1u, 2u, 4u, 8u, 16u}) {
    const double err = frobenius_norm(subtract(w, decompress(compress(w, 8, r, 5, Precision::f32))));
    ok = ok && err <= previous;
    previous = err;
    d << "r=" << r << ":" << err << " ";
  }
  return {ok, d.str()};
}

Outcome mse_claim() {
  int wins = 0;
  double worst_ratio = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix w = gen_synthetic(64, 64, 8, 0.01, seed);
    const ComparisonReport rep = compare(w, 8, 0, seed, 2, Granularity::per_column);
    if (rep.swsc_mse < rep.rtn_mse) ++wins;
    worst_ratio = std::max(worst_ratio, rep.swsc_mse / rep.rtn_mse);
  }
  return {wins == 10, std::to_string(wins) + "/10 seeds, worst swsc/rtn mse ratio " + format_double(worst_ratio)};
}

double min_center_separation(const Matrix& w, std::size_t k_true) {
  double best = std::numeric_limits<double>::infinity();
  // Centers estimated as the means of the generating groups.
  std::vector<std::vector<double>> means(k_true, std::vector<double>(w.rows(), 0.0));
  std::vector<double> counts(k_true, 0.0);
  for (std::size_t j = 0; j < w.cols(); ++j) {
    for (std::size_t i = 0; i < w.rows(); ++i) means[j % k_true][i] += w(i, j);
    counts[j % k_true] += 1.0;
  }
  for (std::size_t a = 0; a < k_true; ++a)
    for (std::size_t b = a + 1; b < k_true; ++b) {
      double d = 0.0;
      for (std::size_t i = 0; i < w.rows(); ++i) {
        const double x = means[a][i] / counts[a] - means[b][i] / counts[b];
        d += x * x;
      }
      best = std::min(best, std::sqrt(d));
    }
  return best;
}

Outcome kmeans_correctness() {
  constexpr double kSigma = 0.05;
  int recovered = 0;
  bool separated = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix w = gen_synthetic(8, 24, 3, kSigma, seed);
    separated = separated && min_center_separation(w, 3) >= 10 * kSigma;
    if (oracle::same_partition(kmeans_channels(w, 3, seed).labels, synthetic_labels(24, 3))) ++recovered;
  }
  double worst = 0.0;
  int instances = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::size_t n : {6u, 7u, 8u}) {
      for (std::size_t k : {2u, 3u}) {
        const Matrix w = gen_synthetic(4, n, k, kSigma, seed * 31 + n * 7 + k);
        separated = separated && min_center_separation(w, k) >= 10 * kSigma;
        KMeansOptions opts;
        opts.restarts = 10;
        const double got = kmeans_objective(w, kmeans_channels(w, k, seed, opts));
        worst = std::max(worst, std::abs(got - oracle::best_partition(w, k).objective));
        ++instances;
      }
    }
  }
  const bool ok = separated && recovered == 10 && worst <= 1e-9;
  return {ok, std::to_string(recovered) + "/10 partitions recovered; " + std::to_string(instances) +
                  " brute-force instances, worst objective gap " + format_double(worst) +
                  (separated ? "" : "; SEPARATION PRECONDITION VIOLATED")};
}

Outcome golden_files() {
  const fs::path dir = SWSC_GOLDEN_DIR;
  const Matrix w = golden::fixture_matrix();
  const std::pair<const char*, std::vector<std::uint8_t>> expected[] = {
      {"small_3x2_f32.wmat", encode_weight(golden::small_matrix(), Precision::f32)},
      {"fixture_64x64_f32.wmat", encode_weight(w, Precision::f32)},
      {"fixture_64x64_f16.wmat", encode_weight(w, Precision::f16)},
      {"fixture_64x64_k8_r4_f32.swsc",
       encode_archive(compress(w, golden::kClusters, golden::kRank, golden::kSeed, Precision::f32))},
      {"fixture_64x64_k8_r4_f16.swsc",
       encode_archive(compress(w, golden::kClusters, golden::kRank, golden::kSeed, Precision::f16))},
  };
  std::ostringstream d;
  bool ok = true;
  for (const auto& [name, bytes] : expected) {
    std::vector<std::uint8_t> golden;
    try {
      golden = read_file(dir / name);
    } catch (const Error&) {
      ok = false;
      d << name << ":missing ";
      continue;
    }
    const bool same = golden == bytes;
    ok = ok && same;
    d << name << ":" << bytes.size() << "B" << (same ? "" : "(MISMATCH)") << " ";
  }
  ok = ok && read_file(dir / "small_3x2_f32.wmat").size() == 56 &&
       read_file(dir / "fixture_64x64_k8_r4_f32.swsc").size() == 48 + 128 + 2048 + 1024 + 1024 + 16;
  return {ok, d.str()};
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "swsc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "swsc_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string in = (dir / "w.wmat").string();
  bool ok = cli({"gen-synthetic", in, "--rows", "64", "--cols", "64", "--true-clusters", "8", "--noise", "0.05",
                 "--seed", "9"}) == 0;
  std::vector<std::vector<std::uint8_t>> archives;
  for (const char* threads : {"1", "1", "4", "4"}) {
    const std::string out = (dir / ("a" + std::to_string(archives.size()) + ".swsc")).string();
    ok = ok && cli({"compress", in, out, "--clusters", "8", "--rank", "4", "--seed", "3", "--restarts", "2",
                    "--threads", threads}) == 0;
    archives.push_back(ok ? read_file(out) : std::vector<std::uint8_t>{});
  }
  bool same = true;
  for (const auto& a : archives) same = same && a == archives.front() && !a.empty();
  fs::remove_all(dir);
  return {ok && same, std::to_string(archives.size()) + " runs (threads 1,1,4,4) " +
                          (same ? "bitwise identical" : "DIFFER")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "average-bits table reproduction", 1.0, budget_table},
      {2, "codebook-only compression ratio", 1.0, codebook_ratio},
      {3, "round-trip exactness", 1.0, round_trip_exactness},
      {4, "Eckart-Young identity", 5.0, eckart_young},
      {5, "rank monotonicity", 5.0, rank_monotonicity},
      {6, "SWSC beats 2-bit RTN on clustered data", 10.0, mse_claim},
      {7, "k-means correctness", 10.0, kmeans_correctness},
      {8, "format golden files", 1.0, golden_files},
      {9, "determinism", 5.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s [%d] %s: %s (%.3fs, limit %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.time_limit_s, in_time ? "" : ", TOO SLOW");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
