#include "rnn/cells.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rnn {

namespace {

void reject_negative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
}

}  // namespace

double phi_cell(double x_plus, double x_minus, const ActivationParams& params) {
  reject_negative(x_plus, "phi_cell: x_plus");
  reject_negative(x_minus, "phi_cell: x_minus");
  reject_negative(params.lambda_plus, "phi_cell: lambda_plus");
  reject_negative(params.r, "phi_cell: r");
  const double num = params.lambda_plus + x_plus;
  const double den = params.r + x_minus;
  if (den <= 0.0) return num > 0.0 ? 1.0 : 0.0;
  return std::min(num / den, 1.0);
}

Matrix phi_cell(const Matrix& x_plus, const Matrix& x_minus, const ActivationParams& params) {
  if (!x_plus.same_shape(x_minus)) throw std::invalid_argument("phi_cell: shape mismatch");
  Matrix out(x_plus.rows(), x_plus.cols());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = phi_cell(x_plus.data()[i], x_minus.data()[i], params);
  return out;
}

double first_order_approx(double lambda_plus, double lambda_minus, double r, double exc_sum,
                          double inh_sum) {
  reject_negative(lambda_plus, "first_order_approx: lambda_plus");
  reject_negative(lambda_minus, "first_order_approx: lambda_minus");
  reject_negative(exc_sum, "first_order_approx: exc_sum");
  reject_negative(inh_sum, "first_order_approx: inh_sum");
  if (!(r > 0.0)) throw std::invalid_argument("first_order_approx: r must be > 0");
  return ((lambda_plus + exc_sum) / r) * (1.0 - (lambda_minus + inh_sum) / r);
}

bool first_order_condition_ok(double lambda_minus, double r, double inh_sum,
                              double ratio_threshold) {
  if (!(r > 0.0)) return false;
  return (lambda_minus + inh_sum) / r <= ratio_threshold;
}

double lrnn_i_approx(double x) {
  reject_negative(x, "lrnn_i_approx: x");
  return std::clamp(1.0 - x, 0.0, 1.0);
}

double cluster_activation(double x_plus, double x_minus) {
  reject_negative(x_plus, "cluster_activation: x_plus");
  reject_negative(x_minus, "cluster_activation: x_minus");
  return std::min(1.0 / (1.0 + x_plus) + x_minus, 1.0);
}

Matrix cluster_activation(const Matrix& x_plus, const Matrix& x_minus) {
  if (!x_plus.same_shape(x_minus)) throw std::invalid_argument("cluster_activation: shape mismatch");
  Matrix out(x_plus.rows(), x_plus.cols());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = cluster_activation(x_plus.data()[i], x_minus.data()[i]);
  return out;
}

}  // namespace rnn
