#pragma once

#include <string>

#include "rnn/cells.hpp"
#include "rnn/kernels.hpp"
#include "rnn/matrix.hpp"

namespace rnn {

/// Grayscale image with intensities in [0, 1]. Construction validates the
/// range so the convolution operators can rely on it.
class Image {
 public:
  explicit Image(Matrix pixels);
  const Matrix& pixels() const { return pixels_; }
  std::size_t rows() const { return pixels_.rows(); }
  std::size_t cols() const { return pixels_.cols(); }

 private:
  Matrix pixels_;
};

enum class KernelScheme { single, twin, cluster };

std::string to_string(KernelScheme s);
KernelScheme kernel_scheme_from_string(const std::string& s);

/// A convolution kernel normalized for one of the RNN constructions and
/// split into its excitatory/inhibitory parts: W = W+ - W-, both >= 0.
/// After preparation sum(|W|) is 1 (single, twin) or 0.1 (cluster).
struct ConvKernel {
  Matrix w;
  Matrix w_plus;
  Matrix w_minus;
  KernelScheme scheme = KernelScheme::single;
};

/// Normalizes W per scheme (W / sum|W|, with an extra /10 for cluster) and
/// splits it. Re-preparing a prepared kernel is a no-op up to roundoff.
/// All-zero kernels are rejected.
ConvKernel prepare_kernel(const Matrix& w, KernelScheme scheme);

/// Scales an already-prepared kernel; used to tighten the cluster
/// approximation (the scheme tag is kept, sums only shrink for s <= 1).
ConvKernel rescale_kernel(const ConvKernel& k, double s);

/// Valid-mode, stride-1 cross-correlation of image and kernel.
inline Matrix conv2d(const Matrix& image, const Matrix& kernel) {
  return kernels::conv2d_valid(image, kernel);
}

/// Single-cell construction: O = phi(conv(I, W+), conv(I, W-)) under the
/// given receptive-cell parameters. `swapped` exchanges the roles of the
/// two parts (the mirrored variant).
Matrix conv_single(const Image& image, const ConvKernel& k, const ActivationParams& params,
                   bool swapped = false);

/// Twin-cell construction, closed form: with I1 = 1/(1+I) elementwise,
/// O = min(conv(I1, W) + 1, 1).
Matrix conv_twin(const Image& image, const ConvKernel& k);

/// Twin-cell construction as actually wired through the two cell arrays:
/// O = min(conv(I1, W+) + conv(I2, W-) + 1 - sum(W-), 1) with
/// I2 = I/(1+I). Algebraically identical to conv_twin; kept separate so
/// the identity can be checked numerically.
Matrix conv_twin_constructive(const Image& image, const ConvKernel& k);

/// max |conv(I1, W)| for the twin construction. The twin scheme requires
/// this to be <= 1; after sum normalization it always is (I1 <= 1), and
/// callers may surface the value as a diagnostic.
double twin_max_response(const Image& image, const ConvKernel& k);

/// Cluster construction: O = varphi(conv(I, W+), conv(I, W-)), an
/// approximation of 1 - ReLU(conv(I, W)) with error at most sum(W+)^2
/// wherever the output clamp is inactive. Requires a cluster-normalized
/// kernel (sum(W+), sum(W-) <= 0.1). When clamp_mask is non-null it is
/// filled with 1.0 where min(..., 1) clamped.
Matrix conv_cluster(const Image& image, const ConvKernel& k, Matrix* clamp_mask = nullptr);

}  // namespace rnn
