#include "rnn/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rnn/errors.hpp"
#include "rnn/rng.hpp"

namespace rnn {

namespace {

struct Tally {
  // Per-neuron excited-time integral over [window_start, end of run].
  std::vector<double> excited_time;
  double window_start = 0.0;
};

// Runs the jump process for cfg.total_events events and returns the final
// model time. When tally is non-null, accumulates per-neuron excited time
// clipped to [tally->window_start, inf).
double run_stream(const RnnNetwork& net, const SimConfig& cfg, EventCounts* counts,
                  Tally* tally) {
  const std::size_t n = net.neuron_count;
  Rng rng(cfg.seed);

  double ext_total = 0.0;
  for (std::size_t l = 0; l < n; ++l)
    ext_total += net.ext_excitatory[l] + net.ext_inhibitory[l];

  std::vector<std::uint32_t> potential(n, 0);
  std::vector<double> excited_since(n, 0.0);  // valid while potential > 0
  double active_fire = 0.0;                   // sum of r_l over excited neurons
  std::size_t excited_count = 0;
  double now = 0.0;

  auto credit = [&](std::size_t l, double until) {
    if (!tally) return;
    const double start = std::max(excited_since[l], tally->window_start);
    if (until > start) tally->excited_time[l] += until - start;
  };
  auto bump_up = [&](std::size_t l) {
    if (potential[l]++ == 0) {
      excited_since[l] = now;
      active_fire += net.firing_rate[l];
      ++excited_count;
    }
  };
  auto bump_down = [&](std::size_t l) {
    if (potential[l] == 0) return;  // inhibitory arrival at k = 0
    if (--potential[l] == 0) {
      credit(l, now);
      active_fire -= net.firing_rate[l];
      if (--excited_count == 0) active_fire = 0.0;  // kill accumulation drift
    }
  };

  for (std::uint64_t ev = 0; ev < cfg.total_events; ++ev) {
    const double total_rate = ext_total + active_fire;
    if (total_rate <= 0.0) break;  // only possible before any arrival
    now += rng.exponential(total_rate);

    // Pick the event category by a single uniform over the cumulative rates:
    // external excitatory per neuron, external inhibitory per neuron, then
    // the firing clock of each excited neuron.
    double pick = rng.uniform01() * total_rate;
    std::size_t chosen = n;
    int kind = -1;
    for (std::size_t l = 0; l < n && kind < 0; ++l) {
      pick -= net.ext_excitatory[l];
      if (pick < 0.0) { chosen = l; kind = 0; }
    }
    for (std::size_t l = 0; l < n && kind < 0; ++l) {
      pick -= net.ext_inhibitory[l];
      if (pick < 0.0) { chosen = l; kind = 1; }
    }
    for (std::size_t l = 0; l < n && kind < 0; ++l) {
      if (potential[l] == 0) continue;
      pick -= net.firing_rate[l];
      if (pick < 0.0) { chosen = l; kind = 2; }
    }
    if (kind < 0) {  // rounding fell off the cumulative scan: last live clock
      for (std::size_t l = n; l-- > 0 && kind < 0;) {
        if (potential[l] > 0 && net.firing_rate[l] > 0.0) { chosen = l; kind = 2; }
        else if (net.ext_inhibitory[l] > 0.0) { chosen = l; kind = 1; }
        else if (net.ext_excitatory[l] > 0.0) { chosen = l; kind = 0; }
      }
      if (kind < 0) break;  // no live clock at all
    }

    switch (kind) {
      case 0:
        if (counts) ++counts->external_excitatory;
        bump_up(chosen);
        break;
      case 1:
        if (counts) ++counts->external_inhibitory;
        bump_down(chosen);
        break;
      default: {
        if (counts) ++counts->firings;
        const double r = net.firing_rate[chosen];
        bump_down(chosen);  // the fired spike costs one unit of potential
        double route = rng.uniform01() * r;
        bool routed = false;
        for (std::size_t j = 0; j < n && !routed; ++j) {
          route -= net.w_plus(chosen, j);
          if (route < 0.0) { bump_up(j); routed = true; }
        }
        for (std::size_t j = 0; j < n && !routed; ++j) {
          route -= net.w_minus(chosen, j);
          if (route < 0.0) { bump_down(j); routed = true; }
        }
        if (!routed && counts) ++counts->departures;  // left the network
        break;
      }
    }
  }

  // Close the still-excited spans.
  for (std::size_t l = 0; l < n; ++l)
    if (potential[l] > 0) credit(l, now);
  return now;
}

}  // namespace

SimResult simulate(const RnnNetwork& net, const SimConfig& cfg) {
  const auto report = validate_network(net);
  if (!report.passed()) throw std::invalid_argument("simulate: invalid network:\n" + report.to_string());
  if (cfg.total_events < 1) throw std::invalid_argument("simulate: total_events must be >= 1");
  if (!(cfg.burn_in_fraction >= 0.0 && cfg.burn_in_fraction < 1.0))
    throw std::invalid_argument("simulate: burn_in_fraction must be in [0,1)");

  const std::size_t n = net.neuron_count;
  double any_rate = 0.0;
  for (std::size_t l = 0; l < n; ++l)
    any_rate += net.ext_excitatory[l] + net.ext_inhibitory[l] + net.firing_rate[l];
  if (any_rate <= 0.0) throw DataError("simulate: degenerate process, all rates are zero");

  SimResult result;
  result.rng_algorithm = Rng::algorithm();
  result.q_hat.assign(n, 0.0);

  // Pass 1 finds the total model time, pass 2 replays the identical stream
  // and integrates excitation over the post-burn-in window.
  const double total_time = run_stream(net, cfg, nullptr, nullptr);
  if (total_time <= 0.0) {
    // No event can ever occur (all external arrivals zero): the state is
    // frozen at k = 0, so q_hat is exactly zero over any horizon.
    result.model_time = 1.0;
    return result;
  }

  Tally tally;
  tally.excited_time.assign(n, 0.0);
  tally.window_start = cfg.burn_in_fraction * total_time;
  run_stream(net, cfg, &result.event_counts, &tally);

  const double window = total_time - tally.window_start;
  for (std::size_t l = 0; l < n; ++l)
    result.q_hat[l] = std::clamp(tally.excited_time[l] / window, 0.0, 1.0);
  result.model_time = total_time;
  return result;
}

AgreementReport compare_to_analytic(const RnnNetwork& net, const SimConfig& cfg, double tol,
                                    const SolveOptions& solve_opts) {
  AgreementReport rep;
  rep.tol = tol;
  rep.q = solve_steady_state(net, solve_opts).q;
  rep.q_hat = simulate(net, cfg).q_hat;
  rep.abs_dev.resize(net.neuron_count);
  for (std::size_t l = 0; l < net.neuron_count; ++l) {
    rep.abs_dev[l] = std::fabs(rep.q_hat[l] - rep.q[l]);
    rep.max_dev = std::max(rep.max_dev, rep.abs_dev[l]);
  }
  rep.passed = rep.max_dev <= tol;
  return rep;
}

}  // namespace rnn
