#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "rnn/cells.hpp"
#include "rnn/conv.hpp"

using namespace rnn;

namespace {

Matrix random_image_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& v : m) v = rng.uniform01();
  return m;
}

Matrix random_signed_kernel(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& v : m) v = 2.0 * rng.uniform01() - 1.0;
  return m;
}

}  // namespace

TEST_CASE("phi special cases") {
  CHECK(phi_cell(0.5, 0.0, {0.0, 1.0}) == doctest::Approx(0.5));   // LRNN-E linear region
  CHECK(phi_cell(0.0, 1.0, {1.0, 1.0}) == doctest::Approx(0.5));   // exact LRNN-I: 1/(1+1)
  CHECK(phi_cell(3.0, 0.0, {0.0, 1.0}) == 1.0);                    // clamp
  CHECK(phi_cell(0.5, 0.0, {0.0, 0.0}) == 1.0);                    // zero denominator clamp
  CHECK(phi_cell(0.0, 0.0, {0.0, 0.0}) == 0.0);                    // never-excited cell
  CHECK_THROWS_AS(phi_cell(-0.1, 0.0, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("phi is monotone and bounded") {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const double xp = 3.0 * rng.uniform01(), xm = 3.0 * rng.uniform01();
    const ActivationParams p{rng.uniform01(), 0.05 + rng.uniform01()};
    const double q = phi_cell(xp, xm, p);
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
    CHECK(phi_cell(xp + 0.1, xm, p) >= q);
    CHECK(phi_cell(xp, xm + 0.1, p) <= q);
  }
}

TEST_CASE("first-order approximation values") {
  CHECK(first_order_approx(1.0, 0.0, 1.0, 0.0, 0.05) == doctest::Approx(0.95));
  CHECK(first_order_approx(0.0, 0.0, 1.0, 0.0, 0.3) == 0.0);
  CHECK_THROWS_AS(first_order_approx(1.0, 0.0, 0.0, 0.0, 0.0), std::invalid_argument);

  // Against the exact inhibitory cell 1/(1+x): quadratic error law.
  const double x = 0.05;
  const double exact = 1.0 / (1.0 + x);
  const double approx = first_order_approx(1.0, 0.0, 1.0, 0.0, x);
  CHECK(std::fabs(exact - approx) <= x * x);
  CHECK(lrnn_i_approx(x) == doctest::Approx(approx));
  CHECK(lrnn_i_approx(2.0) == 0.0);  // clamped below

  CHECK(first_order_condition_ok(0.0, 1.0, 0.05));
  CHECK_FALSE(first_order_condition_ok(0.0, 1.0, 0.5));
}

TEST_CASE("cluster activation values") {
  CHECK(cluster_activation(0.0, 0.0) == 1.0);
  CHECK(cluster_activation(0.02, 0.0) == doctest::Approx(1.0 / 1.02));
  CHECK(std::fabs(cluster_activation(0.02, 0.0) - 0.98) <= 4e-4);
  CHECK(cluster_activation(0.0, 0.5) == 1.0);  // clamped where ReLU would emit zero
  CHECK_THROWS_AS(cluster_activation(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("conv2d identity and window sums") {
  const Matrix ones3(3, 3, 1.0);
  const Matrix id{{1.0}};
  CHECK(conv2d(ones3, id) == ones3);

  const Matrix ones4(4, 4, 1.0);
  const Matrix box(2, 2, 1.0);
  const Matrix out = conv2d(ones4, box);
  REQUIRE(out.rows() == 3);
  REQUIRE(out.cols() == 3);
  for (double v : out) CHECK(v == 4.0);
}

TEST_CASE("conv2d matches the quadruple-loop oracle exactly") {
  Rng rng(17);
  const Matrix image = random_image_matrix(rng, 8, 8);
  const Matrix kernel = random_signed_kernel(rng, 3, 3);
  CHECK(conv2d(image, kernel) == testutil::naive_conv2d(image, kernel));
}

TEST_CASE("conv2d is linear") {
  Rng rng(19);
  const Matrix i1 = random_image_matrix(rng, 6, 7), i2 = random_image_matrix(rng, 6, 7);
  const Matrix k = random_signed_kernel(rng, 3, 2);
  const double a = 0.7, b = -1.3;
  Matrix combo(6, 7);
  for (std::size_t i = 0; i < combo.size(); ++i)
    combo.data()[i] = a * i1.data()[i] + b * i2.data()[i];
  const Matrix lhs = conv2d(combo, k);
  const Matrix c1 = conv2d(i1, k), c2 = conv2d(i2, k);
  for (std::size_t i = 0; i < lhs.size(); ++i)
    CHECK(lhs.data()[i] == doctest::Approx(a * c1.data()[i] + b * c2.data()[i]).epsilon(1e-12));
}

TEST_CASE("conv2d rejects oversized kernels") {
  CHECK_THROWS_AS(conv2d(Matrix(2, 2, 1.0), Matrix(3, 3, 1.0)), std::invalid_argument);
}

TEST_CASE("prepare_kernel normalizes and splits") {
  const ConvKernel single = prepare_kernel(Matrix{{2.0, -2.0}}, KernelScheme::single);
  CHECK(single.w(0, 0) == doctest::Approx(0.5));
  CHECK(single.w(0, 1) == doctest::Approx(-0.5));
  CHECK(single.w_plus(0, 0) == doctest::Approx(0.5));
  CHECK(single.w_plus(0, 1) == 0.0);
  CHECK(single.w_minus(0, 1) == doctest::Approx(0.5));
  CHECK(sum_abs(single.w) == doctest::Approx(1.0).epsilon(1e-12));

  const ConvKernel cluster = prepare_kernel(Matrix{{2.0, -2.0}}, KernelScheme::cluster);
  CHECK(cluster.w(0, 0) == doctest::Approx(0.05));
  CHECK(sum_abs(cluster.w) == doctest::Approx(0.1).epsilon(1e-12));

  CHECK_THROWS_AS(prepare_kernel(Matrix(2, 2, 0.0), KernelScheme::single), std::invalid_argument);
}

TEST_CASE("prepare_kernel is idempotent in effect") {
  Rng rng(23);
  const Matrix raw = random_signed_kernel(rng, 3, 3);
  for (KernelScheme scheme : {KernelScheme::single, KernelScheme::twin, KernelScheme::cluster}) {
    const ConvKernel once = prepare_kernel(raw, scheme);
    const ConvKernel twice = prepare_kernel(once.w, scheme);
    CHECK(max_abs_diff(once.w, twice.w) <= 1e-12);
  }
}

TEST_CASE("conv_single on a blank image is a constant") {
  const Image blank(Matrix(5, 5, 0.0));
  const ConvKernel k = prepare_kernel(Matrix{{1.0, -1.0}}, KernelScheme::single);
  const Matrix out = conv_single(blank, k, {0.05, 0.1});
  for (double v : out) CHECK(v == doctest::Approx(0.5));  // min(lambda/r, 1)
}

TEST_CASE("conv_single with a pure positive kernel collapses to a clipped ratio") {
  Rng rng(29);
  const Matrix pixels = random_image_matrix(rng, 6, 6);
  const Image image(pixels);
  Matrix raw(2, 2, 0.25);
  const ConvKernel k = prepare_kernel(raw, KernelScheme::single);
  const double r = 0.1;
  const Matrix out = conv_single(image, k, {0.0, r});
  const Matrix plain = conv2d(pixels, k.w);
  for (std::size_t i = 0; i < out.size(); ++i)
    CHECK(out.data()[i] == doctest::Approx(std::min(plain.data()[i] / r, 1.0)));
}

TEST_CASE("conv_single matches the composed oracle, swapped or not") {
  Rng rng(31);
  const Matrix pixels = random_image_matrix(rng, 16, 16);
  const Image image(pixels);
  const ConvKernel k = prepare_kernel(random_signed_kernel(rng, 3, 3), KernelScheme::single);
  const ActivationParams params{0.0, 0.1};

  const Matrix direct = conv_single(image, k, params);
  const Matrix oracle = phi_cell(conv2d(pixels, k.w_plus), conv2d(pixels, k.w_minus), params);
  CHECK(direct == oracle);

  const Matrix swapped = conv_single(image, k, params, true);
  const Matrix oracle_swapped =
      phi_cell(conv2d(pixels, k.w_minus), conv2d(pixels, k.w_plus), params);
  CHECK(swapped == oracle_swapped);

  CHECK_THROWS_AS(conv_single(image, prepare_kernel(k.w, KernelScheme::twin), params),
                  std::invalid_argument);
}

TEST_CASE("twin construction: all-ones image halves through the first array") {
  const Image ones(Matrix(4, 4, 1.0));
  const ConvKernel k = prepare_kernel(Matrix{{1.0}}, KernelScheme::twin);
  // I1 = 1/(1+1) = 0.5, kernel is the unit cell, so conv(I1, W) = 0.5.
  const Matrix out = conv_twin(ones, k);
  for (double v : out) CHECK(v == 1.0);  // min(0.5 + 1, 1)
  CHECK(twin_max_response(ones, k) == doctest::Approx(0.5));
}

TEST_CASE("twin constructive and closed forms agree elementwise") {
  Rng rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    const Image image(random_image_matrix(rng, 8, 8));
    const ConvKernel k = prepare_kernel(random_signed_kernel(rng, 3, 3), KernelScheme::twin);
    CHECK(twin_max_response(image, k) <= 1.0);
    const Matrix closed = conv_twin(image, k);
    const Matrix constructive = conv_twin_constructive(image, k);
    CHECK(max_abs_diff(closed, constructive) <= 1e-12);
  }
}

TEST_CASE("twin output dips below one under an all-negative kernel") {
  Rng rng(41);
  const Image image(random_image_matrix(rng, 6, 6));
  Matrix raw(3, 3);
  for (double& v : raw) v = -(0.2 + rng.uniform01());
  const Matrix out = conv_twin(image, prepare_kernel(raw, KernelScheme::twin));
  for (double v : out) CHECK(v < 1.0);
}

TEST_CASE("cluster convolution on a blank image is all ones") {
  const Image blank(Matrix(9, 9, 0.0));
  const ConvKernel k = prepare_kernel(Matrix{{1.0, -0.5}}, KernelScheme::cluster);
  const Matrix out = conv_cluster(blank, k);
  for (double v : out) CHECK(v == 1.0);
}

TEST_CASE("cluster convolution tracks 1 - ReLU within the quadratic bound") {
  Rng rng(43);
  const Image image(random_image_matrix(rng, 32, 32));
  const ConvKernel k = prepare_kernel(random_signed_kernel(rng, 7, 7), KernelScheme::cluster);

  auto max_unclamped_error = [&](const ConvKernel& kernel) {
    Matrix mask;
    const Matrix out = conv_cluster(image, kernel, &mask);
    const Matrix plain = conv2d(image.pixels(), kernel.w);
    double worst = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (mask.data()[i] != 0.0) continue;
      const double relu = std::max(plain.data()[i], 0.0);
      worst = std::max(worst, std::fabs(out.data()[i] - (1.0 - relu)));
    }
    return worst;
  };

  const double s = sum_abs(k.w_plus);
  REQUIRE(s <= 0.1 + 1e-12);
  CHECK(max_unclamped_error(k) <= s * s);
  CHECK(max_unclamped_error(k) <= 1e-2);

  // Shrinking the kernel shrinks the error quadratically.
  const ConvKernel tight = rescale_kernel(k, 0.01 / s);
  CHECK(max_unclamped_error(tight) <= 1e-4);
}

TEST_CASE("cluster convolution rejects unnormalized kernels") {
  const ConvKernel k = prepare_kernel(Matrix{{1.0, -1.0}}, KernelScheme::cluster);
  const ConvKernel inflated = rescale_kernel(k, 4.0);  // sums now 0.2 each
  const Image image(Matrix(4, 4, 0.5));
  CHECK_THROWS_AS(conv_cluster(image, inflated), std::invalid_argument);
  CHECK_THROWS_AS(conv_cluster(image, prepare_kernel(k.w, KernelScheme::single)),
                  std::invalid_argument);
}

TEST_CASE("images validate their range") {
  Matrix bad(2, 2, 0.5);
  bad(0, 0) = 1.5;
  CHECK_THROWS_AS(Image{bad}, std::invalid_argument);
}
