#pragma once

#include "rnn/matrix.hpp"

namespace rnn {

/// External excitatory rate and firing rate of a receptive cell.
struct ActivationParams {
  double lambda_plus = 0.0;
  double r = 0.1;
};

/// Single-cell steady-state activation
///   phi(x+, x-) = min((lambda + x+) / (r + x-), 1).
/// Special cases: phi(x, 0) at lambda=0, r=1 is the quasi-linear min(x, 1)
/// (LRNN-E cell); phi(0, x) at lambda=1, r=1 is the exact inhibitory cell
/// 1/(1+x) (LRNN-I cell). A cell with zero numerator and zero denominator
/// is never excited and yields 0; a positive numerator over a zero
/// denominator clamps to 1. Negative inputs are rejected.
double phi_cell(double x_plus, double x_minus, const ActivationParams& params);

/// Elementwise phi over matching matrices.
Matrix phi_cell(const Matrix& x_plus, const Matrix& x_minus, const ActivationParams& params);

/// First-order expansion of the steady-state ratio around a small
/// inhibitory load:
///   ((lambda+ + exc) / r) * (1 - (lambda- + inh) / r).
/// Valid when r is much larger than lambda- + inh; not clamped.
double first_order_approx(double lambda_plus, double lambda_minus, double r, double exc_sum,
                          double inh_sum);

/// Whether the expansion above is trustworthy: (lambda- + inh) / r must be
/// small. The default threshold matches the 1/10 scale the cluster
/// normalization enforces.
bool first_order_condition_ok(double lambda_minus, double r, double inh_sum,
                              double ratio_threshold = 0.1);

/// Approximate LRNN-I cell min(1 - x, 1) clamped to [0, 1]; the exact form
/// is 1/(1+x) and the gap is at most x^2.
double lrnn_i_approx(double x);

/// Activation of the three-cell ReLU cluster:
///   varphi(x+, x-) = min(1/(1 + x+) + x-, 1),
/// which approximates 1 - ReLU(x+ - x-) when x+ stays small.
double cluster_activation(double x_plus, double x_minus);
Matrix cluster_activation(const Matrix& x_plus, const Matrix& x_minus);

}  // namespace rnn
