#include "rnn/mlrnn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rnn/errors.hpp"
#include "rnn/kernels.hpp"
#include "rnn/linalg.hpp"
#include "rnn/rng.hpp"
#include "rnn/transforms.hpp"

namespace rnn {

namespace {

// q = cap/(cap + z) elementwise; a zero cap means the layer receives no
// excitation at all and its cells are never excited.
Matrix inhibitory_activation(const Matrix& z, double cap) {
  Matrix out(z.rows(), z.cols());
  if (cap > 0.0)
    for (std::size_t i = 0; i < z.size(); ++i) out.data()[i] = cap / (cap + z.data()[i]);
  return out;
}

// Scale down rows whose sum exceeds cap so the routing constraint holds.
void cap_rows(Matrix& w, double cap) {
  for (std::size_t i = 0; i < w.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < w.cols(); ++j) s += w(i, j);
    if (s > cap) {
      const double f = cap / s;
      for (std::size_t j = 0; j < w.cols(); ++j) w(i, j) *= f;
    }
  }
}

Matrix clamp_unit(const Matrix& x) {
  Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) out.data()[i] = std::min(x.data()[i], 1.0);
  return out;
}

void check_inputs(const std::vector<Matrix>& channels) {
  if (channels.empty()) throw std::invalid_argument("mlrnn: no input channels");
  for (const Matrix& x : channels) {
    if (x.empty()) throw std::invalid_argument("mlrnn: empty channel matrix");
    if (x.rows() != channels.front().rows())
      throw std::invalid_argument("mlrnn: channels disagree on instance count");
    if (!all_finite(x) || !all_nonnegative(x))
      throw std::invalid_argument("mlrnn: inputs must be finite and non-negative");
  }
}

std::vector<Matrix> split_channels(const MlrnnModel& model, const Matrix& x) {
  std::size_t total = 0;
  for (const auto& c : model.channels) total += c.input_width;
  if (x.cols() != total)
    throw std::invalid_argument("mlrnn: input width " + std::to_string(x.cols()) +
                                " does not match model input width " + std::to_string(total));
  std::vector<Matrix> out;
  std::size_t offset = 0;
  for (const auto& c : model.channels) {
    Matrix block(x.rows(), c.input_width);
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < c.input_width; ++j) block(i, j) = x(i, offset + j);
    out.push_back(std::move(block));
    offset += c.input_width;
  }
  return out;
}

}  // namespace

std::size_t MlrnnModel::encoder_output_width() const {
  return w_plus_last.rows();
}

Matrix MlrnnModel::slann_w1() const {
  const std::size_t half = doubled_width() / 2;
  Matrix w1(w_plus_last.rows(), half);
  for (std::size_t i = 0; i < w1.rows(); ++i)
    for (std::size_t j = 0; j < half; ++j) w1(i, j) = w_plus_last(i, half + j);
  return w1;
}

Matrix MlrnnModel::slann_w2() const {
  const std::size_t half = doubled_width() / 2;
  Matrix w2(half, output_width());
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = 0; j < output_width(); ++j)
      w2(i, j) = w_plus_readout(i, j) - w_plus_readout(half + i, j);
  return w2;
}

Matrix encode(const MlrnnModel& model, const std::vector<Matrix>& channels) {
  check_inputs(channels);
  if (channels.size() != model.channels.size())
    throw std::invalid_argument("mlrnn: channel count mismatch");
  Matrix result;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    const ChannelEncoder& enc = model.channels[c];
    if (channels[c].cols() != enc.input_width)
      throw std::invalid_argument("mlrnn: channel " + std::to_string(c) + " width mismatch");
    Matrix q = clamp_unit(channels[c]);
    for (std::size_t l = 0; l < enc.w_minus.size(); ++l)
      q = inhibitory_activation(kernels::matmul(q, enc.w_minus[l]), enc.rate[l]);
    result = (c == 0) ? std::move(q) : hconcat(result, q);
  }
  return result;
}

Matrix forward(const MlrnnModel& model, const std::vector<Matrix>& channels) {
  const Matrix q_last = encode(model, channels);

  // Doubled hidden layer: every cell fires at rate alpha; the first half
  // also receives external excitation alpha, so those cells compute
  // alpha/(alpha + inhibition) and the second half x/(alpha + x).
  const Matrix exc = kernels::matmul(q_last, model.w_plus_last);
  const Matrix inh = kernels::matmul(q_last, model.w_minus_last);
  const std::size_t half = model.doubled_width() / 2;
  Matrix q(exc.rows(), exc.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      const double lam = j < half ? model.alpha : 0.0;
      q(i, j) = std::min((lam + exc(i, j)) / (model.alpha + inh(i, j)), 1.0);
    }

  // Quasi-linear output layer.
  Matrix out = kernels::matmul(q, model.w_plus_readout);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j)
      out(i, j) = std::min(model.output_lambda[j] + out(i, j), 1.0);
  return out;
}

Matrix forward(const MlrnnModel& model, const Matrix& x) {
  return forward(model, split_channels(model, x));
}

Matrix slann_forward(const Matrix& w1, const Matrix& w2, double alpha, const Matrix& x_last) {
  if (!(alpha > 0.0)) throw std::invalid_argument("slann_forward: alpha must be > 0");
  if (!all_nonnegative(w1)) throw std::invalid_argument("slann_forward: W1 must be non-negative");
  Matrix h = kernels::matmul(x_last, w1);
  for (double& v : h) v = alpha / (alpha + v);
  return kernels::matmul(h, w2);
}

namespace {

std::vector<std::size_t> argmax_rows(const Matrix& m) {
  std::vector<std::size_t> out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < m.cols(); ++j)
      if (m(i, j) > m(i, best)) best = j;
    out[i] = best;
  }
  return out;
}

}  // namespace

std::vector<std::size_t> predict(const MlrnnModel& model, const Matrix& x) {
  return argmax_rows(forward(model, x));
}

std::vector<std::size_t> predict(const MlrnnModel& model, const std::vector<Matrix>& channels) {
  return argmax_rows(forward(model, channels));
}

MlrnnModel train(const LabeledDataset& data, const TrainConfig& cfg) {
  return train_multichannel({data.x}, data.y, cfg);
}

MlrnnModel train_multichannel(const std::vector<Matrix>& channels, const Matrix& y,
                              const TrainConfig& cfg) {
  check_inputs(channels);
  const std::size_t instances = channels.front().rows();
  if (instances < 2) throw std::invalid_argument("train: need at least 2 instances");
  if (y.rows() != instances) throw std::invalid_argument("train: Y row count mismatch");
  if (y.cols() < 1) throw std::invalid_argument("train: Y has no columns");
  for (double v : y)
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("train: Y entries must lie in [0,1]");
  if (cfg.hidden_layer_sizes.empty())
    throw std::invalid_argument("train: hidden_layer_sizes must not be empty");
  for (std::size_t w : cfg.hidden_layer_sizes)
    if (w < 1) throw std::invalid_argument("train: hidden layer width must be >= 1");
  const std::size_t doubled = cfg.hidden_layer_sizes.back();
  if (doubled % 2 != 0 || doubled < 2)
    throw std::invalid_argument("train: width of the readout hidden layer must be even");
  if (!(cfg.rate_divisor > 0.0)) throw std::invalid_argument("train: rate_divisor must be > 0");
  if (!(cfg.slann_weight_scale > 0.0 && cfg.slann_weight_scale <= 1.0))
    throw std::invalid_argument("train: slann_weight_scale must be in (0, 1]");

  const std::size_t reconstruction_layers = cfg.hidden_layer_sizes.size() - 1;
  Rng rng(cfg.seed);

  MlrnnModel model;
  std::vector<Matrix> encodings;
  std::vector<double> last_rates;     // firing rate of the final encoder layer, per channel
  std::size_t first_dark_layer = 0;   // network layer where encodings first went all-zero

  // Reconstruction step, independently per channel: each configured layer
  // gets the inhibitory weights that best rebuild the previous encoding
  // from a preprocessed random projection of it.
  for (std::size_t c = 0; c < channels.size(); ++c) {
    ChannelEncoder enc;
    enc.input_width = channels[c].cols();
    Matrix x_l = channels[c];
    double r_prev = 1.0;  // input-layer firing rates
    if (first_dark_layer == 0 && max_value(x_l) == 0.0) first_dark_layer = 1;

    for (std::size_t l = 0; l < reconstruction_layers; ++l) {
      Matrix w_rand = rng.uniform_matrix(x_l.cols(), cfg.hidden_layer_sizes[l]);
      cap_rows(w_rand, r_prev);

      const Matrix z = kernels::matmul(x_l, w_rand);
      const Matrix design = sigma_transform(inhibitory_activation(z, max_value(z)));

      FistaConfig fista_cfg = cfg.fista;
      fista_cfg.observer = nullptr;
      FistaResult sol = fista_nnls(NnlsProblem{design, x_l, cfg.l1_weight}, fista_cfg);

      Matrix w_minus = transpose(sol.w);
      cap_rows(w_minus, r_prev);

      const Matrix drive = kernels::matmul(x_l, w_minus);
      const double rate = max_value(drive) / cfg.rate_divisor;
      x_l = inhibitory_activation(drive, rate);
      if (first_dark_layer == 0 && max_value(x_l) == 0.0) first_dark_layer = l + 2;

      if (cfg.progress)
        cfg.progress(TrainProgress{c, l + 2, sol.objective, sol.iterations});
      enc.w_minus.push_back(std::move(w_minus));
      enc.rate.push_back(rate);
      r_prev = rate;
    }
    encodings.push_back(std::move(x_l));
    last_rates.push_back(r_prev);
    model.channels.push_back(std::move(enc));
  }

  Matrix x_last = encodings.front();
  for (std::size_t c = 1; c < encodings.size(); ++c) x_last = hconcat(x_last, encodings[c]);
  if (max_value(x_last) == 0.0)
    throw DataError("train: encodings are all zero at layer " +
                    std::to_string(first_dark_layer ? first_dark_layer : reconstruction_layers + 1));

  // Readout step: random non-negative scaffold weights, pseudo-inverse
  // least squares for the signed output weights, then the doubling map
  // that realizes the signed readout with non-negative spike rates.
  const std::size_t n_pairs = doubled / 2;
  Matrix w1 = rng.uniform_matrix(x_last.cols(), n_pairs);
  {
    // Each scaffold row is stored three times across the doubled layer
    // (once excitatory, twice inhibitory), so scale rows to a third of the
    // owning cell's firing rate.
    std::size_t row = 0;
    for (std::size_t c = 0; c < model.channels.size(); ++c) {
      const std::size_t width = encodings[c].cols();
      const double cap = last_rates[c] / 3.0;
      for (std::size_t i = 0; i < width; ++i, ++row) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_pairs; ++j) s += w1(row, j);
        if (s > 0.0) {
          const double f = cap / s;
          for (std::size_t j = 0; j < n_pairs; ++j) w1(row, j) *= f;
        }
      }
    }
  }

  const double alpha = max_value(kernels::matmul(x_last, w1)) / cfg.rate_divisor;
  if (!(alpha > 0.0))
    throw DataError("train: degenerate readout, encoder output drives no excitation");

  Matrix h = kernels::matmul(x_last, w1);
  for (double& v : h) v = alpha / (alpha + v);
  Matrix w2 = kernels::matmul(pinv(h), y);

  const double total = sum_abs(w2);
  if (!(total > 0.0)) throw DataError("train: readout solved to all zeros");
  double scale = cfg.slann_weight_scale / total;

  // The doubled layer fires at rate alpha, so each half-row of the split
  // readout may carry at most alpha; shrink further if needed (argmax is
  // scale-invariant).
  double max_half_row = 0.0;
  for (std::size_t i = 0; i < w2.rows(); ++i) {
    double pos = 0.0, neg = 0.0;
    for (std::size_t j = 0; j < w2.cols(); ++j) {
      const double v = w2(i, j) * scale;
      if (v >= 0.0) pos += v; else neg -= v;
    }
    max_half_row = std::max({max_half_row, pos, neg});
  }
  if (max_half_row > alpha) scale *= alpha / max_half_row;
  for (double& v : w2) v *= scale;

  const Matrix w2_pos = positive_part(w2);
  const Matrix w2_neg = negative_part(w2);
  const std::vector<double> neg_colsums = col_sums(w2_neg);
  const double offset = *std::max_element(neg_colsums.begin(), neg_colsums.end());

  model.w_plus_last = hconcat(Matrix(w1.rows(), n_pairs), w1);
  model.w_minus_last = hconcat(w1, w1);
  model.w_plus_readout = vconcat(w2_pos, w2_neg);
  model.alpha = alpha;
  model.offset = offset;
  model.output_lambda.resize(w2.cols());
  for (std::size_t j = 0; j < w2.cols(); ++j) model.output_lambda[j] = offset - neg_colsums[j];
  return model;
}

ValidationReport audit_model(const MlrnnModel& model) {
  ValidationReport rep;
  auto require_nonneg = [&](const Matrix& m, const std::string& name) {
    if (!all_finite(m)) rep.violations.push_back(name + ": non-finite entry");
    else if (!all_nonnegative(m)) rep.violations.push_back(name + ": negative entry");
  };
  auto check_row_caps = [&](const Matrix& wp, const Matrix& wm, double cap,
                            const std::string& name) {
    for (std::size_t i = 0; i < wp.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < wp.cols(); ++j) s += wp(i, j);
      for (std::size_t j = 0; j < wm.cols(); ++j) s += wm(i, j);
      if (s > cap * (1.0 + 1e-12) + 1e-15) {
        std::ostringstream os;
        os << name << " row " << i << ": outgoing sum " << s << " > r " << cap;
        rep.violations.push_back(os.str());
      }
    }
  };

  if (model.channels.empty()) rep.violations.push_back("model has no channels");
  if (model.doubled_width() % 2 != 0 || model.doubled_width() == 0)
    rep.violations.push_back("doubled hidden layer width must be even and positive");
  if (!(model.alpha > 0.0) || !std::isfinite(model.alpha))
    rep.violations.push_back("alpha must be positive and finite");
  for (double v : model.output_lambda)
    if (!(v >= 0.0) || !std::isfinite(v))
      rep.violations.push_back("output_lambda entry negative or non-finite");

  std::size_t expected_rows = 0;
  for (std::size_t c = 0; c < model.channels.size(); ++c) {
    const ChannelEncoder& enc = model.channels[c];
    const std::string tag = "channel " + std::to_string(c);
    double r_prev = 1.0;
    for (std::size_t l = 0; l < enc.w_minus.size(); ++l) {
      const std::string name = tag + " layer " + std::to_string(l + 1) + " weights";
      require_nonneg(enc.w_minus[l], name);
      Matrix no_exc(enc.w_minus[l].rows(), 0);
      check_row_caps(no_exc, enc.w_minus[l], r_prev, name);
      if (l < enc.rate.size()) {
        if (!(enc.rate[l] >= 0.0) || !std::isfinite(enc.rate[l]))
          rep.violations.push_back(tag + ": invalid layer rate");
        r_prev = enc.rate[l];
      }
    }
    expected_rows += enc.w_minus.empty() ? enc.input_width : enc.w_minus.back().cols();
  }
  if (expected_rows != model.w_plus_last.rows())
    rep.violations.push_back("encoder output width does not match the readout block");

  require_nonneg(model.w_plus_last, "last-hidden excitatory weights");
  require_nonneg(model.w_minus_last, "last-hidden inhibitory weights");
  require_nonneg(model.w_plus_readout, "readout weights");
  {
    std::size_t row = 0;
    for (std::size_t c = 0; c < model.channels.size(); ++c) {
      const ChannelEncoder& enc = model.channels[c];
      const double cap = enc.rate.empty() ? 1.0 : enc.rate.back();
      const std::size_t width = enc.w_minus.empty() ? enc.input_width : enc.w_minus.back().cols();
      for (std::size_t i = 0; i < width && row < model.w_plus_last.rows(); ++i, ++row) {
        double s = 0.0;
        for (std::size_t j = 0; j < model.w_plus_last.cols(); ++j)
          s += model.w_plus_last(row, j) + model.w_minus_last(row, j);
        if (s > cap * (1.0 + 1e-12) + 1e-15) {
          std::ostringstream os;
          os << "last hidden layer row " << row << ": outgoing sum " << s << " > r " << cap;
          rep.violations.push_back(os.str());
        }
      }
    }
  }
  check_row_caps(model.w_plus_readout, Matrix(model.w_plus_readout.rows(), 0), model.alpha,
                 "readout layer");
  return rep;
}

}  // namespace rnn
