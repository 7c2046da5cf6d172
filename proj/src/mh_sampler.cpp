#include "bigpast/mh_sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "bigpast/errors.hpp"
#include "bigpast/rng.hpp"
#include "bigpast/special_fn.hpp"

namespace bigpast {

TruncatedStep truncated_step(double old_value, double delta, double u) {
  if (!(old_value > 0.0) || !(delta > 0.0))
    throw std::domain_error("truncated_step: old value and delta must be > 0");
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("truncated_step: u must lie in (0, 1)");
  const double r = old_value / delta;
  double arg;
  if (r > 8.0) {
    // Phi(-r) underflows the sum; the truncation mass is negligible and
    // the argument reduces to u itself.
    arg = u;
  } else {
    arg = normal_cdf(-r) + u * normal_cdf(r);
  }
  constexpr double kHi = 1.0 - 1.1e-16;
  if (arg < 1e-300) arg = 1e-300;
  if (arg > kHi) arg = kHi;
  double value = old_value + delta * normal_quantile(arg);
  if (!(value > 0.0)) value = 1e-300;
  const double log_correction =
      normal_log_cdf(r) - normal_log_cdf(value / delta);
  return {value, log_correction};
}

PosteriorChain run_chain_target(
    const std::function<double(const SkewTParams&)>& log_target,
    const SkewTParams& init, const MhConfig& cfg,
    const std::array<bool, 4>& update_mask) {
  init.validate();
  if (cfg.m0 <= 0) throw std::domain_error("run_chain: m0 must be positive");
  if (!(cfg.burn_in >= 0.0 && cfg.burn_in < 1.0))
    throw std::domain_error("run_chain: burn_in must lie in [0, 1)");
  if (!(cfg.step > 0.0))
    throw std::domain_error("run_chain: step must be positive");

  double p_old = log_target(init);
  if (!std::isfinite(p_old))
    throw std::domain_error("run_chain: init has non-finite log target");

  Rng rng(cfg.seed);
  SkewTParams theta = init;
  std::vector<SkewTParams> states;
  states.reserve(cfg.m0);
  long accepts = 0;

  for (int i = 0; i < cfg.m0; ++i) {
    // Fixed draw order keeps masked runs aligned with full runs.
    const double eps_alpha = cfg.step * rng.normal();
    const double eps_xi = cfg.step * rng.normal();
    const double u_nu = rng.uniform();
    const double u_omega = rng.uniform();
    const double u_accept = rng.uniform();

    SkewTParams prop = theta;
    double correction = 0.0;
    if (update_mask[0]) prop.alpha += eps_alpha;
    if (update_mask[1]) prop.xi += eps_xi;
    if (update_mask[2]) {
      const TruncatedStep s = truncated_step(theta.nu, cfg.step, u_nu);
      prop.nu = s.value;
      correction += s.log_correction;
    }
    if (update_mask[3]) {
      const TruncatedStep s = truncated_step(theta.omega, cfg.step, u_omega);
      prop.omega = s.value;
      correction += s.log_correction;
    }

    bool usable = true;
    double p_new = 0.0;
    try {
      p_new = log_target(prop);
    } catch (const NumericError&) {
      usable = false;
    }
    if (usable && !std::isnan(p_new)) {
      const double a = p_new - p_old + correction;
      if (std::log(u_accept) <= a) {
        theta = prop;
        p_old = p_new;
        ++accepts;
      }
    }
    states.push_back(theta);
  }

  const auto cut = static_cast<std::size_t>(
      std::floor(cfg.m0 * cfg.burn_in));
  PosteriorChain chain;
  chain.draws.assign(states.begin() + cut, states.end());
  chain.acceptance_rate = static_cast<double>(accepts) / cfg.m0;
  chain.all_rejected = accepts == 0;
  chain.acceptance_out_of_band =
      chain.acceptance_rate < 0.05 || chain.acceptance_rate > 0.8;
  return chain;
}

PosteriorChain run_chain(const Sample& data, const SkewTParams& init,
                         const MhConfig& cfg) {
  if (data.empty()) throw std::domain_error("run_chain: data must be nonempty");
  return run_chain_target(
      [&](const SkewTParams& p) { return log_posterior(data, p, cfg.prior); },
      init, cfg);
}

}  // namespace bigpast
