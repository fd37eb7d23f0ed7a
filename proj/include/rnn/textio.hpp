#pragma once

#include <string>

#include "rnn/matrix.hpp"
#include "rnn/mlrnn.hpp"
#include "rnn/network.hpp"

namespace rnn {

/// Plain-text network description, hand-editable:
///
///   # comment lines and blank lines are ignored
///   L = 2
///   r = 1 1
///   Lambda_plus = 0.5 0.5
///   lambda_minus = 0 0
///   W_plus =
///   0 0
///   0 0
///   W_minus =
///   0 1
///   1 0
///
/// `L` must come first; vectors take L numbers on the key line, matrices
/// take L rows of L numbers on the following lines. Omitted vector/matrix
/// keys default to zero (r defaults to one). Unknown keys are errors.
RnnNetwork parse_network_file(const std::string& path);
void write_network_file(const RnnNetwork& net, const std::string& path);

/// Whitespace-separated numeric matrix, one row per line; '#' comments.
Matrix read_matrix_text(const std::string& path);

/// Flat `key = value` training configuration. Recognized keys:
/// hidden_layers (comma or space separated widths), fista_iterations,
/// l1_weight, seed, rate_divisor, slann_weight_scale, holdout_fraction.
/// Unknown keys are errors.
struct TrainFileConfig {
  TrainConfig train;
  double holdout_fraction = 0.25;
};
TrainFileConfig parse_train_config(const std::string& path);

}  // namespace rnn
