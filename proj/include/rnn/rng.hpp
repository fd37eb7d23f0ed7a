#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "rnn/matrix.hpp"

namespace rnn {

/// Seedable 64-bit generator used everywhere randomness is needed.
/// The engine is std::mt19937_64 (fully specified by the standard) and the
/// variate transforms below are hand-rolled, so a given seed produces the
/// same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::string algorithm() { return "mt19937_64"; }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, 1).
  double uniform() { return uniform01(); }

  /// Exponential with the given rate (> 0).
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  /// Integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is fine here; n is tiny compared to 2^64.
    return engine_() % n;
  }

  Matrix uniform_matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (double& x : m) x = uniform01();
    return m;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rnn
