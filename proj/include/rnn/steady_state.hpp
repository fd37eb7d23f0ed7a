#pragma once

#include <cstddef>
#include <vector>

#include "rnn/network.hpp"

namespace rnn {

/// Stationary excitation probabilities q of a valid network, together with
/// the work the solver did to reach them.
struct SteadyState {
  std::vector<double> q;     // per-neuron excitation probability, in [0,1]
  std::size_t iterations = 0;
  double residual = 0.0;     // max-norm fixed-point defect of q
};

struct SolveOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
};

/// One Gauss-Jacobi sweep of the steady-state map:
///   q_l <- min(lambda+_l(q) / (r_l + lambda-_l(q)), 1)
/// with lambda+_l = Lambda_l + sum_k q_k w+(k,l) and
/// lambda-_l = lambda_l + sum_k q_k w-(k,l). Reads only the previous
/// iterate, so per-neuron updates are independent. A neuron with
/// lambda+ = 0 and r + lambda- = 0 is never excited: q_l = 0.
std::vector<double> jacobi_sweep(const RnnNetwork& net, const std::vector<double>& q);

/// max_l |q_l - sweep(q)_l|. q must have length L with entries in [0,1].
double fixed_point_residual(const RnnNetwork& net, const std::vector<double>& q);

/// Successive substitution from q = 0 until the fixed-point defect drops
/// below tol. The solution is unique, so the starting point only affects
/// the iteration count. Throws ConvergenceError (carrying the last
/// iterate) when max_iter sweeps are not enough.
SteadyState solve_steady_state(const RnnNetwork& net, const SolveOptions& opts = {});

/// Same, but from a caller-supplied starting point in [0,1]^L.
SteadyState solve_steady_state_from(const RnnNetwork& net, std::vector<double> q0,
                                    const SolveOptions& opts = {});

}  // namespace rnn
