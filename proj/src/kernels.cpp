#include "rnn/kernels.hpp"

#include <cstdint>
#include <stdexcept>

namespace rnn::kernels {

namespace {

void check_matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
}

void check_conv(const Matrix& image, const Matrix& kernel) {
  if (kernel.rows() == 0 || kernel.cols() == 0)
    throw std::invalid_argument("conv2d_valid: empty kernel");
  if (kernel.rows() > image.rows() || kernel.cols() > image.cols())
    throw std::invalid_argument("conv2d_valid: kernel larger than image");
}

// One output row of C = A*B, dot-product order (fixed k accumulation).
void matmul_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
  const std::size_t n = b.cols(), k = a.cols();
  const double* arow = a.row(i);
  double* crow = c.row(i);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t p = 0; p < k; ++p) acc += arow[p] * b(p, j);
    crow[j] = acc;
  }
}

// One output row of the valid-mode cross-correlation.
void conv_row(const Matrix& image, const Matrix& kernel, Matrix& out, std::size_t i) {
  const std::size_t kh = kernel.rows(), kw = kernel.cols();
  for (std::size_t j = 0; j < out.cols(); ++j) {
    double acc = 0.0;
    for (std::size_t u = 0; u < kh; ++u) {
      const double* irow = image.row(i + u) + j;
      const double* krow = kernel.row(u);
      for (std::size_t v = 0; v < kw; ++v) acc += irow[v] * krow[v];
    }
    out(i, j) = acc;
  }
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  check_matmul(a, b);
  Matrix c(a.rows(), b.cols());
  const std::int64_t m = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

Matrix conv2d_valid(const Matrix& image, const Matrix& kernel) {
  check_conv(image, kernel);
  Matrix out(image.rows() - kernel.rows() + 1, image.cols() - kernel.cols() + 1);
  const std::int64_t m = static_cast<std::int64_t>(out.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) conv_row(image, kernel, out, static_cast<std::size_t>(i));
  return out;
}

namespace reference {

Matrix matmul(const Matrix& a, const Matrix& b) {
  check_matmul(a, b);
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
  return c;
}

Matrix conv2d_valid(const Matrix& image, const Matrix& kernel) {
  check_conv(image, kernel);
  Matrix out(image.rows() - kernel.rows() + 1, image.cols() - kernel.cols() + 1);
  for (std::size_t i = 0; i < out.rows(); ++i) conv_row(image, kernel, out, i);
  return out;
}

}  // namespace reference

}  // namespace rnn::kernels
