#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rnn/fista.hpp"
#include "rnn/matrix.hpp"
#include "rnn/network.hpp"

namespace rnn {

/// Labelled training data: non-negative instances by rows, targets in
/// [0, 1] (one-hot for classification).
struct LabeledDataset {
  Matrix x;                             // D x N1, >= 0
  Matrix y;                             // D x N_out
  std::vector<std::string> class_names; // optional, column order of y
};

/// One channel's inhibitory encoder stack (the layers configured by the
/// reconstruction step). Empty for the no-hidden-stack case.
struct ChannelEncoder {
  std::size_t input_width = 0;
  std::vector<Matrix> w_minus;  // layer l -> l+1 inhibitory weights
  std::vector<double> rate;     // shared external rate = firing rate per configured layer
};

/// Trained multi-layer RNN classifier. Layer bookkeeping, with L the
/// number of encoder-facing layers (input plus configured hidden layers):
///   - per-channel encoder stacks drive layers 2..L,
///   - w_plus_last/w_minus_last feed the doubled hidden layer L+1 whose
///     cells all fire at rate alpha (first half also receives external
///     excitation alpha, the second half none),
///   - w_plus_readout feeds the quasi-linear output layer, whose cells
///     receive the per-column external rates output_lambda.
/// offset is the column-independent constant separating the network output
/// from the underlying least-squares readout.
struct MlrnnModel {
  std::vector<ChannelEncoder> channels;
  Matrix w_plus_last;                 // N_L_total x N_{L+1}
  Matrix w_minus_last;                // N_L_total x N_{L+1}
  Matrix w_plus_readout;              // N_{L+1} x N_out
  double alpha = 0.0;
  std::vector<double> output_lambda;  // length N_out
  double offset = 0.0;

  std::size_t encoder_output_width() const;  // N_L summed over channels
  std::size_t doubled_width() const { return w_plus_last.cols(); }  // N_{L+1}
  std::size_t output_width() const { return w_plus_readout.cols(); }

  /// The readout scaffold the training step solved: input weights (the
  /// right half of w_plus_last) and signed output weights (top half minus
  /// bottom half of w_plus_readout).
  Matrix slann_w1() const;
  Matrix slann_w2() const;
};

struct TrainProgress {
  std::size_t channel = 0;
  std::size_t layer = 0;        // network layer index being configured
  double objective = 0.0;       // reconstruction objective at the solution
  std::size_t fista_iterations = 0;
};

struct TrainConfig {
  /// Widths of layers 2..L+1; the last entry is the doubled readout layer
  /// and must be even. A single entry means no reconstruction layers.
  std::vector<std::size_t> hidden_layer_sizes = {100, 200};
  FistaConfig fista;
  double l1_weight = 1.0;
  std::uint64_t seed = 1;
  double rate_divisor = 5.0;        // the /5 in the rate assignments
  double slann_weight_scale = 1.0;  // target sum|W2| after rescale, in (0, 1]
  std::function<void(const TrainProgress&)> progress;
};

/// Layer-L encodings of the inputs (per-channel stacks applied and
/// concatenated). Input clamping min(X, 1) is applied here, as in forward.
Matrix encode(const MlrnnModel& model, const std::vector<Matrix>& channels);

/// Full forward pass; returns the output excitation probabilities, one row
/// per instance, entries in [0, 1].
Matrix forward(const MlrnnModel& model, const std::vector<Matrix>& channels);

/// Convenience overload: X holds the channel blocks side by side.
Matrix forward(const MlrnnModel& model, const Matrix& x);

/// Readout scaffold forward pass: (alpha / (alpha + X W1)) W2. This is the
/// reference the output layer of the trained network reproduces up to the
/// additive offset.
Matrix slann_forward(const Matrix& w1, const Matrix& w2, double alpha, const Matrix& x_last);

/// argmax per row of forward(); ties break to the lowest index.
std::vector<std::size_t> predict(const MlrnnModel& model, const Matrix& x);
std::vector<std::size_t> predict(const MlrnnModel& model, const std::vector<Matrix>& channels);

/// Gradient-free configuration of the full network against (X, Y).
/// Deterministic given cfg.seed.
MlrnnModel train(const LabeledDataset& data, const TrainConfig& cfg = {});

/// Multi-channel variant: private encoder stacks per channel, shared
/// readout on the concatenated encodings. With one channel this is
/// exactly train().
MlrnnModel train_multichannel(const std::vector<Matrix>& channels, const Matrix& y,
                              const TrainConfig& cfg = {});

/// RNN-constraint audit of a trained model: non-negativity everywhere and
/// per-cell outgoing row sums bounded by the cell's firing rate, for every
/// layer.
ValidationReport audit_model(const MlrnnModel& model);

}  // namespace rnn
