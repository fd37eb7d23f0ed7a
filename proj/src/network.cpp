#include "rnn/network.hpp"

#include <cmath>
#include <sstream>

namespace rnn {

RnnNetwork RnnNetwork::empty(std::size_t n) {
  RnnNetwork net;
  net.neuron_count = n;
  net.w_plus = Matrix(n, n);
  net.w_minus = Matrix(n, n);
  net.firing_rate.assign(n, 1.0);
  net.ext_excitatory.assign(n, 0.0);
  net.ext_inhibitory.assign(n, 0.0);
  return net;
}

std::string ValidationReport::to_string() const {
  if (passed()) return "pass";
  std::ostringstream os;
  for (const auto& v : violations) os << v << '\n';
  return os.str();
}

namespace {

void check_entry(ValidationReport& rep, const char* name, std::size_t i, double v) {
  if (!std::isfinite(v)) {
    rep.violations.push_back("neuron " + std::to_string(i) + ": non-finite " + name);
  } else if (v < 0.0) {
    rep.violations.push_back("neuron " + std::to_string(i) + ": negative " + name);
  }
}

}  // namespace

ValidationReport validate_network(const RnnNetwork& net) {
  ValidationReport rep;
  const std::size_t n = net.neuron_count;
  if (net.w_plus.rows() != n || net.w_plus.cols() != n || net.w_minus.rows() != n ||
      net.w_minus.cols() != n || net.firing_rate.size() != n ||
      net.ext_excitatory.size() != n || net.ext_inhibitory.size() != n) {
    rep.violations.push_back("shape: fields do not match neuron count " + std::to_string(n));
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i) {
    check_entry(rep, "firing rate", i, net.firing_rate[i]);
    check_entry(rep, "external excitatory rate", i, net.ext_excitatory[i]);
    check_entry(rep, "external inhibitory rate", i, net.ext_inhibitory[i]);
    double row_sum = 0.0;
    bool row_ok = true;
    for (std::size_t j = 0; j < n; ++j) {
      const double wp = net.w_plus(i, j), wm = net.w_minus(i, j);
      if (!std::isfinite(wp) || wp < 0.0) {
        check_entry(rep, "w+ entry", i, wp);
        row_ok = false;
      }
      if (!std::isfinite(wm) || wm < 0.0) {
        check_entry(rep, "w- entry", i, wm);
        row_ok = false;
      }
      row_sum += wp + wm;
    }
    if (!row_ok || !std::isfinite(net.firing_rate[i])) continue;
    const double r = net.firing_rate[i];
    // Outgoing routing probabilities must sum to <= 1; tiny slack for the
    // rounding introduced by row normalizations upstream.
    if (row_sum > r * (1.0 + 1e-12) + 1e-15) {
      std::ostringstream os;
      os << "neuron " << i << ": row sum " << row_sum << " > r " << r;
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

}  // namespace rnn
