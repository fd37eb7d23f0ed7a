#include "rnn/fista.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rnn/errors.hpp"
#include "rnn/kernels.hpp"
#include "rnn/linalg.hpp"

namespace rnn {

namespace {

void check_problem(const NnlsProblem& p) {
  if (p.a.empty() || p.b.empty()) throw std::invalid_argument("fista_nnls: empty problem");
  if (p.a.rows() != p.b.rows()) throw std::invalid_argument("fista_nnls: A and B row mismatch");
  if (!all_finite(p.a) || !all_finite(p.b))
    throw std::invalid_argument("fista_nnls: non-finite problem entry");
  if (!(p.reg >= 0.0)) throw std::invalid_argument("fista_nnls: reg must be >= 0");
  if (max_abs(p.a) == 0.0) throw std::invalid_argument("fista_nnls: A has no non-zero column");
}

// grad = 2 A^T (A W - B)
Matrix gradient(const NnlsProblem& p, const Matrix& w, const Matrix& at) {
  Matrix resid = kernels::matmul(p.a, w);
  for (std::size_t i = 0; i < resid.size(); ++i) resid.data()[i] -= p.b.data()[i];
  Matrix g = kernels::matmul(at, resid);
  for (double& v : g) v *= 2.0;
  return g;
}

}  // namespace

double nnls_objective(const NnlsProblem& p, const Matrix& w) {
  Matrix resid = kernels::matmul(p.a, w);
  double quad = 0.0;
  for (std::size_t i = 0; i < resid.size(); ++i) {
    const double d = resid.data()[i] - p.b.data()[i];
    quad += d * d;
  }
  double l1 = 0.0;
  for (double v : w) l1 += std::fabs(v);
  return quad + p.reg * l1;
}

FistaResult fista_nnls(const NnlsProblem& p, const FistaConfig& cfg) {
  check_problem(p);
  if (cfg.max_iter < 1) throw std::invalid_argument("fista_nnls: max_iter must be >= 1");

  double step = cfg.step;
  if (step <= 0.0) {
    const double smax = spectral_norm(p.a);
    step = 1.0 / (2.0 * smax * smax);  // 1/Lipschitz for the unhalved quadratic
  }
  const double shrink = p.reg * step;

  const Matrix at = transpose(p.a);
  const std::size_t m = p.a.cols(), n = p.b.cols();
  Matrix w(m, n), w_prev(m, n), y(m, n);
  double t = 1.0;

  Matrix best = w;
  double best_obj = nnls_objective(p, w);

  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    const Matrix g = gradient(p, y, at);
    w_prev = std::move(w);
    w = Matrix(m, n);
    for (std::size_t i = 0; i < w.size(); ++i) {
      // Proximal map of reg*||.||_1 restricted to W >= 0.
      w.data()[i] = std::max(y.data()[i] - step * g.data()[i] - shrink, 0.0);
    }
    if (!all_finite(w))
      throw DataError("fista_nnls: non-finite iterate at iteration " + std::to_string(it));

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double momentum = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < y.size(); ++i)
      y.data()[i] = w.data()[i] + momentum * (w.data()[i] - w_prev.data()[i]);
    t = t_next;

    const double obj = nnls_objective(p, w);
    if (obj < best_obj) {
      best_obj = obj;
      best = w;
    }
    if (cfg.observer) cfg.observer(it, w);
  }
  return FistaResult{std::move(best), cfg.max_iter, best_obj};
}

}  // namespace rnn
