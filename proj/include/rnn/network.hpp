#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rnn/matrix.hpp"

namespace rnn {

/// A recurrent network of spiking neurons exchanging unit excitatory and
/// inhibitory spikes in continuous time.
///
/// Weights are rate products: w+(i,j) = r(i) * p+(i,j) and
/// w-(i,j) = r(i) * p-(i,j), so for every neuron with a positive firing
/// rate the outgoing row must satisfy sum_j(w+ + w-) <= r (the routing
/// probabilities sum to at most 1, the remainder leaving the network).
struct RnnNetwork {
  std::size_t neuron_count = 0;       // L
  Matrix w_plus;                      // L x L excitatory weights, spikes/sec
  Matrix w_minus;                     // L x L inhibitory weights, spikes/sec
  std::vector<double> firing_rate;    // r, 1/sec
  std::vector<double> ext_excitatory; // Lambda, spikes/sec
  std::vector<double> ext_inhibitory; // lambda, spikes/sec

  /// Zero-weight network of the given size with unit firing rates.
  static RnnNetwork empty(std::size_t n);
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks the RNN constraints on candidate data. Violations come back as
/// data in the report; nothing throws.
ValidationReport validate_network(const RnnNetwork& net);

}  // namespace rnn
