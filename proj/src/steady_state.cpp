#include "rnn/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "rnn/errors.hpp"

namespace rnn {

namespace {

void check_q(const RnnNetwork& net, const std::vector<double>& q) {
  if (q.size() != net.neuron_count)
    throw std::invalid_argument("steady state: q length does not match neuron count");
  for (double v : q)
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("steady state: q entry outside [0,1]");
}

double update_one(const RnnNetwork& net, const std::vector<double>& q, std::size_t l) {
  double num = net.ext_excitatory[l];
  double den = net.firing_rate[l] + net.ext_inhibitory[l];
  for (std::size_t k = 0; k < q.size(); ++k) {
    num += q[k] * net.w_plus(k, l);
    den += q[k] * net.w_minus(k, l);
  }
  if (den <= 0.0) return num > 0.0 ? 1.0 : 0.0;  // clamp / never-excited
  return std::min(num / den, 1.0);
}

}  // namespace

std::vector<double> jacobi_sweep(const RnnNetwork& net, const std::vector<double>& q) {
  check_q(net, q);
  std::vector<double> out(q.size());
  const std::int64_t n = static_cast<std::int64_t>(q.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t l = 0; l < n; ++l)
    out[static_cast<std::size_t>(l)] = update_one(net, q, static_cast<std::size_t>(l));
  return out;
}

double fixed_point_residual(const RnnNetwork& net, const std::vector<double>& q) {
  const std::vector<double> next = jacobi_sweep(net, q);
  double res = 0.0;
  for (std::size_t l = 0; l < q.size(); ++l) res = std::max(res, std::fabs(q[l] - next[l]));
  return res;
}

SteadyState solve_steady_state_from(const RnnNetwork& net, std::vector<double> q0,
                                    const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("solve_steady_state: tol must be > 0");
  if (opts.max_iter < 1) throw std::invalid_argument("solve_steady_state: max_iter must be >= 1");
  check_q(net, q0);

  std::vector<double> q = std::move(q0);
  double residual = 0.0;
  for (std::size_t it = 0; it <= opts.max_iter; ++it) {
    std::vector<double> next = jacobi_sweep(net, q);
    residual = 0.0;
    for (std::size_t l = 0; l < q.size(); ++l)
      residual = std::max(residual, std::fabs(q[l] - next[l]));
    if (residual <= opts.tol) return SteadyState{std::move(q), it, residual};
    if (it == opts.max_iter) break;
    q = std::move(next);
  }
  throw ConvergenceError("steady state: no convergence after " +
                             std::to_string(opts.max_iter) + " sweeps",
                         std::move(q), residual);
}

SteadyState solve_steady_state(const RnnNetwork& net, const SolveOptions& opts) {
  return solve_steady_state_from(net, std::vector<double>(net.neuron_count, 0.0), opts);
}

}  // namespace rnn
