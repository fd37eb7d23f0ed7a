#include "rnn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rnn/kernels.hpp"

namespace rnn {

namespace {

// One-sided (Hestenes) Jacobi: rotate column pairs of a working copy of A
// until all pairs are numerically orthogonal; the column norms are the
// singular values and the accumulated rotations give V.
SvdResult svd_tall(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix b = a;
  Matrix v = Matrix::identity(n);

  const double tol = 1e-15;
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double bp = b(i, p), bq = b(i, q);
          app += bp * bp;
          aqq += bq * bq;
          apq += bp * bq;
        }
        if (std::fabs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double bp = b(i, p), bq = b(i, q);
          b(i, p) = c * bp - s * bq;
          b(i, q) = s * bp + c * bq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm2 += b(i, j) * b(i, j);
    sv[j] = std::sqrt(norm2);
  }

  // Sort descending, permuting U and V alike.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sv[x] > sv[y]; });

  SvdResult out;
  out.u = Matrix(m, n);
  out.v = Matrix(n, n);
  out.singular_values.resize(n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t j = order[jj];
    out.singular_values[jj] = sv[j];
    const double inv = sv[j] > 0.0 ? 1.0 / sv[j] : 0.0;
    for (std::size_t i = 0; i < m; ++i) out.u(i, jj) = b(i, j) * inv;
    for (std::size_t i = 0; i < n; ++i) out.v(i, jj) = v(i, j);
  }
  return out;
}

}  // namespace

SvdResult svd(const Matrix& a) {
  if (a.empty()) throw std::invalid_argument("svd: empty matrix");
  if (!all_finite(a)) throw std::invalid_argument("svd: non-finite entry");
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(transpose(a));
  return SvdResult{std::move(t.v), std::move(t.singular_values), std::move(t.u)};
}

double spectral_norm(const Matrix& a) {
  return svd(a).singular_values.front();
}

Matrix pinv(const Matrix& a) {
  SvdResult d = svd(a);
  const double smax = d.singular_values.front();
  const double cutoff = std::numeric_limits<double>::epsilon() *
                        static_cast<double>(std::max(a.rows(), a.cols())) * smax;

  // A+ = V * diag(1/s) * U^T, dropping directions below the cutoff.
  Matrix vs = d.v;  // n x k, columns scaled by 1/s
  for (std::size_t j = 0; j < d.singular_values.size(); ++j) {
    const double inv = d.singular_values[j] > cutoff ? 1.0 / d.singular_values[j] : 0.0;
    for (std::size_t i = 0; i < vs.rows(); ++i) vs(i, j) *= inv;
  }
  return kernels::matmul(vs, transpose(d.u));
}

}  // namespace rnn
