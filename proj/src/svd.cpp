#include "swsc/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "swsc/error.hpp"

namespace swsc {

namespace {

using Column = std::vector<double>;

double dot(const Column& x, const Column& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void rotate(Column& x, Column& y, double c, double s) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

// Orthogonalizes the columns of `cols` in place and accumulates the applied
// rotations into `basis` (which starts as the identity). Columns with norm
// at or below `negligible` are numerically zero and take no part in rotations.
void hestenes_jacobi(std::vector<Column>& cols, std::vector<Column>& basis, double negligible,
                     const SvdOptions& opts) {
  const std::size_t n = cols.size();
  const double floor = negligible * negligible;
  double worst = 0.0;
  for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = dot(cols[p], cols[p]);
        const double beta = dot(cols[q], cols[q]);
        if (alpha <= floor || beta <= floor) continue;
        const double gamma = dot(cols[p], cols[q]);
        if (gamma == 0.0) continue;
        const double ratio = std::abs(gamma) / (std::sqrt(alpha) * std::sqrt(beta));
        worst = std::max(worst, ratio);
        if (ratio <= opts.tol) continue;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(cols[p], cols[q], c, s);
        rotate(basis[p], basis[q], c, s);
      }
    }
    if (worst <= opts.tol) return;
  }
  std::ostringstream msg;
  msg << "truncated_svd: Jacobi sweeps did not converge after " << opts.max_sweeps
      << " sweeps (largest normalized off-diagonal " << worst << ", tolerance " << opts.tol << ")";
  throw NumericalError(msg.str());
}

// Replaces the zero entries of `vecs` (flagged in `missing`) with unit vectors
// orthogonal to every other entry, taken from the standard basis.
void complete_orthonormal(std::vector<Column>& vecs, const std::vector<bool>& missing, std::size_t dim) {
  std::size_t next_axis = 0;
  for (std::size_t j = 0; j < vecs.size(); ++j) {
    if (!missing[j]) continue;
    for (; next_axis < dim; ++next_axis) {
      Column cand(dim, 0.0);
      cand[next_axis] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t o = 0; o < vecs.size(); ++o) {
          if (o == j || (missing[o] && o > j)) continue;
          const double proj = dot(cand, vecs[o]);
          for (std::size_t i = 0; i < dim; ++i) cand[i] -= proj * vecs[o][i];
        }
      }
      const double norm = std::sqrt(dot(cand, cand));
      if (norm > 0.5) {
        for (double& v : cand) v /= norm;
        vecs[j] = std::move(cand);
        ++next_axis;
        break;
      }
    }
  }
}

}  // namespace

SvdResult truncated_svd(const Matrix& a, std::size_t r, const SvdOptions& opts) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (r < 1 || r > std::min(m, n)) {
    throw ParameterError("truncated_svd: rank " + std::to_string(r) + " outside [1, " +
                         std::to_string(std::min(m, n)) + "]");
  }

  // Power-of-two scaling to unit magnitude is exact and keeps squared column
  // norms away from underflow.
  double max_abs = 0.0;
  for (double v : a.values()) max_abs = std::max(max_abs, std::abs(v));
  const int shift = max_abs > 0.0 ? -std::ilogb(max_abs) : 0;

  // Orthogonalize along the shorter side: columns of A when m >= n, else of A^T.
  const bool transposed = m < n;
  const std::size_t len = transposed ? n : m;
  const std::size_t count = transposed ? m : n;
  std::vector<Column> cols(count, Column(len));
  double frob2 = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = std::ldexp(a(i, j), shift);
      frob2 += v * v;
      if (transposed)
        cols[i][j] = v;
      else
        cols[j][i] = v;
    }
  // Singular values at or below this are rounding noise and count as zero.
  const double negligible = std::numeric_limits<double>::epsilon() * std::sqrt(frob2);
  std::vector<Column> basis(count, Column(count, 0.0));
  for (std::size_t j = 0; j < count; ++j) basis[j][j] = 1.0;

  hestenes_jacobi(cols, basis, negligible, opts);

  std::vector<double> sigma(count);
  for (std::size_t j = 0; j < count; ++j) sigma[j] = std::sqrt(dot(cols[j], cols[j]));
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  std::vector<Column> normalized(r);
  std::vector<Column> fixed(r);
  std::vector<bool> missing(r, false);
  std::vector<double> values(r);
  for (std::size_t t = 0; t < r; ++t) {
    const std::size_t j = order[t];
    fixed[t] = basis[j];
    if (sigma[j] <= negligible) {
      values[t] = 0.0;
      missing[t] = true;
      normalized[t] = Column(len, 0.0);
    } else {
      values[t] = std::ldexp(sigma[j], -shift);
      normalized[t] = cols[j];
      for (double& v : normalized[t]) v /= sigma[j];
    }
  }
  complete_orthonormal(normalized, missing, len);

  SvdResult out{Matrix(m, r), std::move(values), Matrix(r, n)};
  const auto& left_vecs = transposed ? fixed : normalized;
  const auto& right_vecs = transposed ? normalized : fixed;
  for (std::size_t t = 0; t < r; ++t) {
    const Column& u = left_vecs[t];
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (std::abs(u[i]) > std::abs(u[pivot])) pivot = i;
    const double sign = u[pivot] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < m; ++i) out.left(i, t) = sign * u[i];
    for (std::size_t j = 0; j < n; ++j) out.right(t, j) = sign * right_vecs[t][j];
  }
  return out;
}

Matrix svd_reconstruct(const SvdResult& svd) {
  Matrix scaled = svd.left;
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t t = 0; t < scaled.cols(); ++t) scaled(i, t) *= svd.singular_values[t];
  return matmul(scaled, svd.right);
}

}  // namespace swsc
