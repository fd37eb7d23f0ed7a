#pragma once

// Shared generators and independent oracles for the test suites. The
// oracles deliberately avoid the library's kernel entry points so they
// check the implementation from the outside.

#include <cmath>
#include <cstdint>
#include <vector>

#include "rnn/matrix.hpp"
#include "rnn/mlrnn.hpp"
#include "rnn/network.hpp"
#include "rnn/rng.hpp"

namespace testutil {

/// Random network satisfying the RNN constraints with margin: routing
/// probabilities sum to at most ~0.85, so the fixed-point map contracts
/// comfortably.
inline rnn::RnnNetwork random_valid_network(rnn::Rng& rng, std::size_t n) {
  rnn::RnnNetwork net = rnn::RnnNetwork::empty(n);
  for (std::size_t l = 0; l < n; ++l) {
    net.firing_rate[l] = 0.5 + 1.5 * rng.uniform01();
    net.ext_excitatory[l] = 0.2 + 0.8 * rng.uniform01();
    net.ext_inhibitory[l] = 0.5 * rng.uniform01();
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> pp(n), pm(n);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      pp[j] = rng.uniform01();
      pm[j] = rng.uniform01();
      total += pp[j] + pm[j];
    }
    const double target = 0.3 + 0.55 * rng.uniform01();
    const double scale = total > 0.0 ? target / total : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      net.w_plus(i, j) = net.firing_rate[i] * pp[j] * scale;
      net.w_minus(i, j) = net.firing_rate[i] * pm[j] * scale;
    }
  }
  return net;
}

/// Hand-solved two-neuron mutual inhibition: Lambda = 0.5, r = 1,
/// w-(1,2) = w-(2,1) = 1. By symmetry q solves q^2 + q - 0.5 = 0.
inline rnn::RnnNetwork mutual_inhibition_pair() {
  rnn::RnnNetwork net = rnn::RnnNetwork::empty(2);
  net.ext_excitatory = {0.5, 0.5};
  net.w_minus(0, 1) = 1.0;
  net.w_minus(1, 0) = 1.0;
  return net;
}

inline double mutual_inhibition_q() { return (-1.0 + std::sqrt(3.0)) / 2.0; }

/// Quadruple-loop valid-mode cross-correlation, written independently of
/// the kernel code (same accumulation order: kernel rows then columns).
inline rnn::Matrix naive_conv2d(const rnn::Matrix& image, const rnn::Matrix& kernel) {
  rnn::Matrix out(image.rows() - kernel.rows() + 1, image.cols() - kernel.cols() + 1);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t u = 0; u < kernel.rows(); ++u)
        for (std::size_t v = 0; v < kernel.cols(); ++v)
          acc += image(i + u, j + v) * kernel(u, v);
      out(i, j) = acc;
    }
  return out;
}

/// Long-horizon projected gradient for
///   min ||B - A W||^2 + reg * sum(W)  over W >= 0,
/// with its own conservative Lipschitz bound (2 * ||A||_1 * ||A||_inf) and
/// its own plain-loop matrix products.
inline rnn::Matrix projected_gradient_nnls(const rnn::Matrix& a, const rnn::Matrix& b, double reg,
                                           std::size_t iterations) {
  const std::size_t d = a.rows(), m = a.cols(), n = b.cols();
  double norm1 = 0.0, norm_inf = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < d; ++i) c += std::fabs(a(i, j));
    norm1 = std::max(norm1, c);
  }
  for (std::size_t i = 0; i < d; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < m; ++j) r += std::fabs(a(i, j));
    norm_inf = std::max(norm_inf, r);
  }
  const double step = 1.0 / (2.0 * norm1 * norm_inf);

  rnn::Matrix w(m, n);
  rnn::Matrix resid(d, n), grad(m, n);
  for (std::size_t it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = -b(i, j);
        for (std::size_t k = 0; k < m; ++k) acc += a(i, k) * w(k, j);
        resid(i, j) = acc;
      }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < d; ++k) acc += a(k, i) * resid(k, j);
        grad(i, j) = 2.0 * acc + reg;
      }
    for (std::size_t i = 0; i < w.size(); ++i)
      w.data()[i] = std::max(w.data()[i] - step * grad.data()[i], 0.0);
  }
  return w;
}

inline double nnls_objective_direct(const rnn::Matrix& a, const rnn::Matrix& b, double reg,
                                    const rnn::Matrix& w) {
  double quad = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = -b(i, j);
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * w(k, j);
      quad += acc * acc;
    }
  double l1 = 0.0;
  for (double v : w) l1 += std::fabs(v);
  return quad + reg * l1;
}

inline double gaussian(rnn::Rng& rng) {
  const double u1 = 1.0 - rng.uniform01();  // (0, 1]
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

/// Two spherical Gaussian clusters in [0,1]^dim with per-coordinate mean
/// separation of three standard deviations, clipped to stay non-negative.
inline rnn::LabeledDataset gaussian_two_class(std::size_t per_class, std::size_t dim,
                                              std::uint64_t seed) {
  rnn::Rng rng(seed);
  const double sigma = 0.1;
  rnn::LabeledDataset data;
  data.x = rnn::Matrix(2 * per_class, dim);
  data.y = rnn::Matrix(2 * per_class, 2);
  data.class_names = {"a", "b"};
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const std::size_t cls = i < per_class ? 0 : 1;
    const double mean = cls == 0 ? 0.35 : 0.65;
    for (std::size_t j = 0; j < dim; ++j) {
      const double v = mean + sigma * gaussian(rng);
      data.x(i, j) = std::min(std::max(v, 0.0), 1.0);
    }
    data.y(i, cls) = 1.0;
  }
  return data;
}

inline double accuracy(const std::vector<std::size_t>& pred, const rnn::Matrix& y) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    std::size_t truth = 0;
    for (std::size_t j = 1; j < y.cols(); ++j)
      if (y(i, j) > y(i, truth)) truth = j;
    if (truth == pred[i]) ++hits;
  }
  return pred.empty() ? 0.0 : double(hits) / double(pred.size());
}

}  // namespace testutil
