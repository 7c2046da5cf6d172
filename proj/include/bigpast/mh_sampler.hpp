#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "bigpast/priors.hpp"
#include "bigpast/skewt.hpp"

namespace bigpast {

struct MhConfig {
  int m0 = 10000;        // total iterations
  double burn_in = 0.4;  // discarded fraction, in [0, 1)
  double step = 0.5;     // proposal step size delta
  std::uint64_t seed = 0;
  PriorKind prior = PriorKind::jeffreys();
};

struct PosteriorChain {
  std::vector<SkewTParams> draws;  // post burn-in states
  double acceptance_rate = 0.0;
  bool all_rejected = false;
  bool acceptance_out_of_band = false;  // outside [0.05, 0.8]
};

// One truncated-normal random-walk step on (0, inf):
//   new = old + delta * Phi^-1[Phi(-old/delta) + u * Phi(old/delta)]
// log_correction is the Hastings adjustment
//   log Phi(old/delta) - log Phi(new/delta).
struct TruncatedStep {
  double value;
  double log_correction;
};
TruncatedStep truncated_step(double old_value, double delta, double u);

// Random-walk Metropolis-Hastings over (alpha, xi, nu, omega) against an
// arbitrary log target. Normal increments for alpha and xi, truncated
// steps for nu and omega, one joint accept/reject per iteration. The
// update mask freezes parameters (order alpha, xi, nu, omega) without
// changing the variate stream, so reduced chains stay comparable.
PosteriorChain run_chain_target(
    const std::function<double(const SkewTParams&)>& log_target,
    const SkewTParams& init, const MhConfig& cfg,
    const std::array<bool, 4>& update_mask = {true, true, true, true});

// The sampler against log_posterior(data, ., cfg.prior).
PosteriorChain run_chain(const Sample& data, const SkewTParams& init,
                         const MhConfig& cfg);

}  // namespace bigpast
