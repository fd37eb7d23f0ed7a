#pragma once

#include "rnn/matrix.hpp"

namespace rnn {

/// Column-wise preprocessing used to build reconstruction design matrices:
/// each column is mapped affinely onto [0, 1] (constant columns to 0.5),
/// standardized to zero mean and unit sample standard deviation (columns
/// with zero spread become zero), and the whole matrix is then shifted by
/// -min + 0.1, so the output minimum is exactly 0.1.
Matrix sigma_transform(const Matrix& h);

}  // namespace rnn
