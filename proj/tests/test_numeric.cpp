#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "rnn/fista.hpp"
#include "rnn/kernels.hpp"
#include "rnn/linalg.hpp"
#include "rnn/transforms.hpp"

using namespace rnn;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, double lo = 0.0, double hi = 1.0) {
  Matrix m(r, c);
  for (double& v : m) v = lo + (hi - lo) * rng.uniform01();
  return m;
}

double penrose_max_residual(const Matrix& a, const Matrix& api) {
  using kernels::matmul;
  const Matrix aa = matmul(matmul(a, api), a);          // A A+ A = A
  const Matrix pp = matmul(matmul(api, a), api);        // A+ A A+ = A+
  const Matrix s1 = matmul(a, api);                     // symmetric
  const Matrix s2 = matmul(api, a);                     // symmetric
  double worst = max_abs_diff(aa, a);
  worst = std::max(worst, max_abs_diff(pp, api));
  worst = std::max(worst, max_abs_diff(s1, transpose(s1)));
  worst = std::max(worst, max_abs_diff(s2, transpose(s2)));
  return worst;
}

}  // namespace

TEST_CASE("fista matches the hand-derived proximal closed form") {
  NnlsProblem p;
  p.a = Matrix::identity(2);
  p.b = Matrix{{1.0}, {0.2}};
  p.reg = 1.0;
  const FistaResult res = fista_nnls(p, {100, 0.0, 0, nullptr});
  // Per-entry objective (w - b)^2 + w over w >= 0: w* = max(b - 1/2, 0).
  CHECK(res.w(0, 0) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(res.w(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("fista returns zero for zero targets") {
  Rng rng(3);
  NnlsProblem p{random_matrix(rng, 6, 4), Matrix(6, 2, 0.0), 0.5};
  const FistaResult res = fista_nnls(p);
  for (double v : res.w) CHECK(v == 0.0);
}

TEST_CASE("fista stays within one percent of a long projected-gradient run") {
  Rng rng(5);
  for (int trial = 0; trial < 2; ++trial) {
    NnlsProblem p{random_matrix(rng, 20, 10), random_matrix(rng, 20, 3), 1.0};
    const FistaResult res = fista_nnls(p, {100, 0.0, 0, nullptr});
    const Matrix oracle = testutil::projected_gradient_nnls(p.a, p.b, p.reg, 50000);
    const double oracle_obj = testutil::nnls_objective_direct(p.a, p.b, p.reg, oracle);
    CHECK(res.objective <= oracle_obj * 1.01);
    CHECK(nnls_objective(p, res.w) == doctest::Approx(res.objective));
  }
}

TEST_CASE("fista iterates never go negative and never beat W = 0 backwards") {
  Rng rng(7);
  NnlsProblem p{random_matrix(rng, 15, 8), random_matrix(rng, 15, 2, -0.5, 1.0), 1.0};
  FistaConfig cfg;
  cfg.max_iter = 60;
  bool saw_negative = false;
  cfg.observer = [&](std::size_t, const Matrix& w) {
    if (!all_nonnegative(w)) saw_negative = true;
  };
  const FistaResult res = fista_nnls(p, cfg);
  CHECK_FALSE(saw_negative);
  CHECK(all_nonnegative(res.w));
  CHECK(res.objective <= nnls_objective(p, Matrix(8, 2, 0.0)));
}

TEST_CASE("fista rejects an all-zero design matrix") {
  CHECK_THROWS_AS(fista_nnls(NnlsProblem{Matrix(4, 3, 0.0), Matrix(4, 1, 1.0), 1.0}),
                  std::invalid_argument);
}

TEST_CASE("an explicit step size near 1/Lipschitz reaches the same objective") {
  Rng rng(31);
  NnlsProblem p{random_matrix(rng, 12, 6), random_matrix(rng, 12, 2), 1.0};
  const double smax = spectral_norm(p.a);
  const FistaResult auto_step = fista_nnls(p, {200, 0.0, 0, nullptr});
  const FistaResult manual = fista_nnls(p, {200, 1.0 / (2.0 * smax * smax), 0, nullptr});
  CHECK(manual.objective == doctest::Approx(auto_step.objective).epsilon(1e-9));
}

TEST_CASE("pinv of simple matrices") {
  const Matrix i3 = Matrix::identity(3);
  CHECK(max_abs_diff(pinv(i3), i3) <= 1e-12);
  const Matrix two{{2.0}};
  CHECK(pinv(two)(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("pinv reproduces A through A A+ A") {
  Rng rng(11);
  const Matrix a = random_matrix(rng, 10, 6, -1.0, 1.0);
  const Matrix api = pinv(a);
  const Matrix aaa = kernels::matmul(kernels::matmul(a, api), a);
  CHECK(max_abs_diff(aaa, a) <= 1e-8 * max_abs(a));
}

TEST_CASE("pinv satisfies all four Penrose identities on random shapes") {
  Rng rng(13);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t r = 2 + rng.below(49), c = 2 + rng.below(29);
    const Matrix a = random_matrix(rng, r, c, -1.0, 1.0);
    CHECK(penrose_max_residual(a, pinv(a)) <= 1e-8 * std::max(1.0, max_abs(a)));
  }
}

TEST_CASE("pinv handles rank deficiency via the cutoff") {
  // Rank-1 matrix: duplicate columns.
  Matrix a(4, 2);
  for (std::size_t i = 0; i < 4; ++i) { a(i, 0) = double(i + 1); a(i, 1) = double(i + 1); }
  const Matrix api = pinv(a);
  CHECK(penrose_max_residual(a, api) <= 1e-8 * max_abs(a));
}

TEST_CASE("svd reconstructs and orders singular values") {
  Rng rng(17);
  const Matrix a = random_matrix(rng, 7, 5, -2.0, 2.0);
  const SvdResult d = svd(a);
  for (std::size_t i = 1; i < d.singular_values.size(); ++i)
    CHECK(d.singular_values[i - 1] >= d.singular_values[i]);
  // U diag(s) V^T == A
  Matrix us = d.u;
  for (std::size_t j = 0; j < d.singular_values.size(); ++j)
    for (std::size_t i = 0; i < us.rows(); ++i) us(i, j) *= d.singular_values[j];
  CHECK(max_abs_diff(kernels::matmul(us, transpose(d.v)), a) <= 1e-10);
  CHECK(spectral_norm(a) == doctest::Approx(d.singular_values.front()));
}

TEST_CASE("sigma_transform pipeline on the worked column") {
  const Matrix h{{0.0}, {1.0}, {2.0}};
  const Matrix out = sigma_transform(h);
  CHECK(out(0, 0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(out(1, 0) == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(out(2, 0) == doctest::Approx(2.1).epsilon(1e-12));
}

TEST_CASE("sigma_transform maps constant columns to the shift floor") {
  const Matrix h(4, 1, 7.5);
  const Matrix out = sigma_transform(h);
  for (double v : out) CHECK(v == doctest::Approx(0.1));

  // Mixed with a varying column the constant one stays uniform.
  Rng rng(19);
  Matrix mixed(5, 2);
  for (std::size_t i = 0; i < 5; ++i) {
    mixed(i, 0) = 3.0;
    mixed(i, 1) = rng.uniform01();
  }
  const Matrix out2 = sigma_transform(mixed);
  for (std::size_t i = 1; i < 5; ++i) CHECK(out2(i, 0) == out2(0, 0));
}

TEST_CASE("sigma_transform output minimum is exactly 0.1") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix h = random_matrix(rng, 3 + rng.below(10), 1 + rng.below(6), -5.0, 5.0);
    CHECK(min_value(sigma_transform(h)) == doctest::Approx(0.1).epsilon(1e-12));
  }
}

TEST_CASE("sigma_transform ignores positive column rescaling") {
  Rng rng(29);
  const Matrix h = random_matrix(rng, 8, 3, 0.0, 2.0);
  Matrix scaled = h;
  for (std::size_t i = 0; i < 8; ++i) scaled(i, 1) *= 37.0;
  CHECK(max_abs_diff(sigma_transform(h), sigma_transform(scaled)) <= 1e-12);
}
