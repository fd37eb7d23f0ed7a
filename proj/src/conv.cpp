#include "rnn/conv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rnn {

Image::Image(Matrix pixels) : pixels_(std::move(pixels)) {
  if (pixels_.empty()) throw std::invalid_argument("Image: empty pixel matrix");
  for (double v : pixels_)
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("Image: intensity outside [0,1]");
}

std::string to_string(KernelScheme s) {
  switch (s) {
    case KernelScheme::single: return "single";
    case KernelScheme::twin: return "twin";
    default: return "cluster";
  }
}

KernelScheme kernel_scheme_from_string(const std::string& s) {
  if (s == "single") return KernelScheme::single;
  if (s == "twin") return KernelScheme::twin;
  if (s == "cluster") return KernelScheme::cluster;
  throw std::invalid_argument("unknown kernel scheme: " + s);
}

ConvKernel prepare_kernel(const Matrix& w, KernelScheme scheme) {
  if (w.empty()) throw std::invalid_argument("prepare_kernel: empty kernel");
  if (!all_finite(w)) throw std::invalid_argument("prepare_kernel: non-finite kernel entry");
  const double total = sum_abs(w);
  if (total <= 0.0) throw std::invalid_argument("prepare_kernel: all-zero kernel");
  double scale = 1.0 / total;
  if (scheme == KernelScheme::cluster) scale /= 10.0;  // keeps sum(W+), sum(W-) <= 0.1

  ConvKernel k;
  k.scheme = scheme;
  k.w = Matrix(w.rows(), w.cols());
  for (std::size_t i = 0; i < w.size(); ++i) k.w.data()[i] = w.data()[i] * scale;
  k.w_plus = positive_part(k.w);
  k.w_minus = negative_part(k.w);
  return k;
}

ConvKernel rescale_kernel(const ConvKernel& k, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("rescale_kernel: scale must be > 0");
  ConvKernel out = k;
  for (std::size_t i = 0; i < out.w.size(); ++i) {
    out.w.data()[i] *= s;
    out.w_plus.data()[i] *= s;
    out.w_minus.data()[i] *= s;
  }
  return out;
}

namespace {

void require_scheme(const ConvKernel& k, KernelScheme scheme, const char* op) {
  if (k.scheme != scheme)
    throw std::invalid_argument(std::string(op) + ": kernel prepared with scheme '" +
                                to_string(k.scheme) + "', expected '" + to_string(scheme) + "'");
  if (k.w.empty() || !k.w.same_shape(k.w_plus) || !k.w.same_shape(k.w_minus))
    throw std::invalid_argument(std::string(op) + ": unprepared kernel");
}

Matrix reciprocal_one_plus(const Matrix& m) {  // 1/(1+I) elementwise
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = 1.0 / (1.0 + m.data()[i]);
  return out;
}

}  // namespace

Matrix conv_single(const Image& image, const ConvKernel& k, const ActivationParams& params,
                   bool swapped) {
  require_scheme(k, KernelScheme::single, "conv_single");
  const Matrix exc = conv2d(image.pixels(), swapped ? k.w_minus : k.w_plus);
  const Matrix inh = conv2d(image.pixels(), swapped ? k.w_plus : k.w_minus);
  return phi_cell(exc, inh, params);
}

double twin_max_response(const Image& image, const ConvKernel& k) {
  return max_abs(conv2d(reciprocal_one_plus(image.pixels()), k.w));
}

Matrix conv_twin(const Image& image, const ConvKernel& k) {
  require_scheme(k, KernelScheme::twin, "conv_twin");
  Matrix out = conv2d(reciprocal_one_plus(image.pixels()), k.w);
  for (double& v : out) v = std::min(v + 1.0, 1.0);
  return out;
}

Matrix conv_twin_constructive(const Image& image, const ConvKernel& k) {
  require_scheme(k, KernelScheme::twin, "conv_twin_constructive");
  const Matrix i1 = reciprocal_one_plus(image.pixels());
  Matrix i2(i1.rows(), i1.cols());  // I/(1+I) = 1 - I1
  for (std::size_t i = 0; i < i1.size(); ++i) i2.data()[i] = 1.0 - i1.data()[i];

  const double wm_sum = sum_abs(k.w_minus);
  Matrix a = conv2d(i1, k.w_plus);
  const Matrix b = conv2d(i2, k.w_minus);
  for (std::size_t i = 0; i < a.size(); ++i)
    a.data()[i] = std::min(a.data()[i] + b.data()[i] + 1.0 - wm_sum, 1.0);
  return a;
}

Matrix conv_cluster(const Image& image, const ConvKernel& k, Matrix* clamp_mask) {
  require_scheme(k, KernelScheme::cluster, "conv_cluster");
  const double budget = 0.1 + 1e-12;
  if (sum_abs(k.w_plus) > budget || sum_abs(k.w_minus) > budget)
    throw std::invalid_argument("conv_cluster: kernel not cluster-normalized (part sums exceed 0.1)");

  const Matrix exc = conv2d(image.pixels(), k.w_plus);
  const Matrix inh = conv2d(image.pixels(), k.w_minus);
  Matrix out(exc.rows(), exc.cols());
  if (clamp_mask) *clamp_mask = Matrix(exc.rows(), exc.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double raw = 1.0 / (1.0 + exc.data()[i]) + inh.data()[i];
    out.data()[i] = std::min(raw, 1.0);
    if (clamp_mask && raw >= 1.0) clamp_mask->data()[i] = 1.0;
  }
  return out;
}

}  // namespace rnn
