#include "rnn/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace rnn {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::memcpy(out.row(i), a.row(i), a.cols() * sizeof(double));
    std::memcpy(out.row(i) + a.cols(), b.row(i), b.cols() * sizeof(double));
  }
  return out;
}

Matrix vconcat(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vconcat: column mismatch");
  Matrix out(a.rows() + b.rows(), a.cols());
  std::memcpy(out.data(), a.data(), a.size() * sizeof(double));
  std::memcpy(out.data() + a.size(), b.data(), b.size() * sizeof(double));
  return out;
}

double min_value(const Matrix& m) {
  if (m.empty()) throw std::invalid_argument("min_value: empty matrix");
  return *std::min_element(m.begin(), m.end());
}

double max_value(const Matrix& m) {
  if (m.empty()) throw std::invalid_argument("max_value: empty matrix");
  return *std::max_element(m.begin(), m.end());
}

double max_abs(const Matrix& m) {
  double v = 0.0;
  for (double x : m) v = std::max(v, std::fabs(x));
  return v;
}

double sum_abs(const Matrix& m) {
  double s = 0.0;
  for (double x : m) s += std::fabs(x);
  return s;
}

bool all_finite(const Matrix& m) {
  for (double x : m)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_nonnegative(const Matrix& m) {
  for (double x : m)
    if (!(x >= 0.0)) return false;
  return true;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    v = std::max(v, std::fabs(a.data()[i] - b.data()[i]));
  return v;
}

std::vector<double> row_abs_sums(const Matrix& m) {
  std::vector<double> s(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s[i] += std::fabs(m(i, j));
  return s;
}

std::vector<double> col_sums(const Matrix& m) {
  std::vector<double> s(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s[j] += m(i, j);
  return s;
}

Matrix positive_part(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = std::max(m.data()[i], 0.0);
  return out;
}

Matrix negative_part(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = std::max(-m.data()[i], 0.0);
  return out;
}

}  // namespace rnn
