#include "rnn/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rnn {

Matrix sigma_transform(const Matrix& h) {
  if (h.empty()) throw std::invalid_argument("sigma_transform: empty matrix");
  const std::size_t rows = h.rows(), cols = h.cols();
  Matrix out(rows, cols);

  for (std::size_t j = 0; j < cols; ++j) {
    double lo = h(0, j), hi = h(0, j);
    for (std::size_t i = 1; i < rows; ++i) {
      lo = std::min(lo, h(i, j));
      hi = std::max(hi, h(i, j));
    }
    const double span = hi - lo;
    for (std::size_t i = 0; i < rows; ++i)
      out(i, j) = span > 0.0 ? (h(i, j) - lo) / span : 0.5;

    double mean = 0.0;
    for (std::size_t i = 0; i < rows; ++i) mean += out(i, j);
    mean /= static_cast<double>(rows);
    double var = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double d = out(i, j) - mean;
      var += d * d;
    }
    // Sample standard deviation (n - 1); single rows or flat columns
    // standardize to zero.
    const double sd = rows > 1 ? std::sqrt(var / static_cast<double>(rows - 1)) : 0.0;
    for (std::size_t i = 0; i < rows; ++i)
      out(i, j) = sd > 0.0 ? (out(i, j) - mean) / sd : 0.0;
  }

  const double shift = -min_value(out) + 0.1;
  for (double& v : out) v += shift;
  return out;
}

}  // namespace rnn
