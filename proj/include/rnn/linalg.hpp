#pragma once

#include <vector>

#include "rnn/matrix.hpp"

namespace rnn {

/// Thin SVD A = U * diag(s) * V^T with singular values sorted descending.
/// U is m x k, V is n x k, k = min(m, n).
struct SvdResult {
  Matrix u;
  std::vector<double> singular_values;
  Matrix v;
};

/// One-sided Jacobi SVD. Serial and deterministic; accurate enough for the
/// desk-scale matrices this toolkit handles (hundreds by hundreds).
SvdResult svd(const Matrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// Moore-Penrose pseudo-inverse via the SVD, zeroing singular values below
/// eps * max(m, n) * s_max.
Matrix pinv(const Matrix& a);

}  // namespace rnn
