#pragma once

#include "rnn/matrix.hpp"

namespace rnn::kernels {

// Hot loops live here. The default entry points are OpenMP-parallel over
// output rows; the serial twins in kernels::reference are kept for testing
// and benchmarking. Both sides share the same per-row block, so a given
// output element is accumulated in the same order either way and the two
// paths agree bit for bit, at any thread count.

/// C = A * B.
Matrix matmul(const Matrix& a, const Matrix& b);

/// Valid-mode, stride-1, 2-D cross-correlation (no kernel flip).
/// Output is (H - h + 1) x (W - w + 1); the kernel must fit in the input.
Matrix conv2d_valid(const Matrix& image, const Matrix& kernel);

namespace reference {
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix conv2d_valid(const Matrix& image, const Matrix& kernel);
}  // namespace reference

}  // namespace rnn::kernels
