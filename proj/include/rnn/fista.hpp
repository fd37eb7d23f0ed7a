#pragma once

#include <cstdint>
#include <functional>

#include "rnn/matrix.hpp"

namespace rnn {

/// Non-negative l1-regularized least squares:
///   minimize ||B - A W||_F^2 + reg * ||W||_1   over W >= 0.
/// Note the unhalved squared norm; the gradient of the smooth part is
/// 2 A^T (A W - B) and its Lipschitz constant 2 * smax(A)^2.
struct NnlsProblem {
  Matrix a;          // D x m design
  Matrix b;          // D x n targets
  double reg = 1.0;  // l1 weight, >= 0
};

struct FistaConfig {
  std::size_t max_iter = 100;
  double step = 0.0;        // explicit step size; 0 means 1/Lipschitz ("auto")
  std::uint64_t seed = 0;   // reserved for randomized variants; unused here
  /// Optional per-iteration observer (iteration index, current solution).
  std::function<void(std::size_t, const Matrix&)> observer;
};

struct FistaResult {
  Matrix w;                  // m x n, >= 0 elementwise
  std::size_t iterations = 0;
  double objective = 0.0;    // objective at w
};

double nnls_objective(const NnlsProblem& p, const Matrix& w);

/// FISTA with the proximal map of the objective above (soft-threshold by
/// reg * step, then clamp negatives to zero) applied every iteration.
/// Momentum runs on the projected iterates; the best iterate seen is
/// returned so the result never does worse than W = 0.
FistaResult fista_nnls(const NnlsProblem& p, const FistaConfig& cfg = {});

}  // namespace rnn
