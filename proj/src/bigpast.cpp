#include "bigpast/bigpast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bigpast/errors.hpp"
#include "bigpast/rng.hpp"

namespace bigpast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Index arithmetic on B*beta products is exact in intent but inexact in
// floating point; nudge toward the intended integer before rounding.
long index_floor(double x) {
  return static_cast<long>(std::floor(x + 1e-9 * std::max(1.0, std::abs(x))));
}

long index_ceil(double x) {
  return static_cast<long>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))));
}

double order_stat(const Sample& pool, long idx_1based) {
  return pool[static_cast<std::size_t>(idx_1based - 1)];
}

TestResult decide(Method method, double subject,
                  const CredibleInterval& interval) {
  TestResult r;
  r.method = method;
  r.interval = interval;
  r.subject = subject;
  r.reject = !interval.contains(subject);
  return r;
}

CredibleInterval quantile_interval(const SkewTParams& p, double beta,
                                   Alternative alt) {
  CredibleInterval ci;
  ci.beta = beta;
  ci.alternative = alt;
  switch (alt) {
    case Alternative::TwoSided:
      ci.lo = quantile(0.5 * beta, p);
      ci.hi = quantile(1.0 - 0.5 * beta, p);
      break;
    case Alternative::Less:
      ci.lo = quantile(beta, p);
      ci.hi = kInf;
      break;
    case Alternative::Greater:
      ci.lo = -kInf;
      ci.hi = quantile(1.0 - beta, p);
      break;
  }
  return ci;
}

SkewTParams checked_fit(const FitResult& fit, const char* what) {
  if (!std::isfinite(fit.objective))
    throw NumericError(std::string(what) + ": fit produced a non-finite objective");
  return fit.params;
}

}  // namespace

Sample predictive_pool(const PosteriorChain& chain, std::size_t s,
                       std::uint64_t seed) {
  if (chain.draws.empty())
    throw std::domain_error("predictive_pool: chain is empty");
  if (s == 0) throw std::domain_error("predictive_pool: s must be at least 1");
  Rng rng(seed);
  Sample pool;
  pool.reserve(chain.draws.size() * s);
  for (const SkewTParams& p : chain.draws)
    for (std::size_t j = 0; j < s; ++j) pool.push_back(sample_one(p, rng));
  std::sort(pool.begin(), pool.end());
  return pool;
}

CredibleInterval credible_interval(const Sample& pool, double beta,
                                   Alternative alt,
                                   std::optional<int> degenerate) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("credible_interval: beta must lie in (0, 1)");
  if (pool.empty()) throw std::domain_error("credible_interval: empty pool");
  const double b = static_cast<double>(pool.size());
  const long n = static_cast<long>(pool.size());

  CredibleInterval ci;
  ci.beta = beta;
  ci.alternative = alt;

  if (degenerate) {
    const long cut = index_floor(b * beta);
    if (cut < 1)
      throw DegenerateIndexError("credible_interval: pool too small for beta");
    if (*degenerate >= 0) {
      ci.lo = order_stat(pool, 1);
      ci.hi = order_stat(pool, std::min(n, index_ceil(b * (1.0 - beta))));
    } else {
      ci.lo = order_stat(pool, cut);
      ci.hi = order_stat(pool, n);
    }
    return ci;
  }

  switch (alt) {
    case Alternative::TwoSided: {
      const long lo = index_floor(b * 0.5 * beta);
      const long hi = std::min(n, index_ceil(b * (1.0 - 0.5 * beta)));
      if (lo < 1)
        throw DegenerateIndexError(
            "credible_interval: pool too small for beta");
      ci.lo = order_stat(pool, lo);
      ci.hi = order_stat(pool, hi);
      break;
    }
    case Alternative::Less: {
      const long lo = index_floor(b * beta);
      if (lo < 1)
        throw DegenerateIndexError(
            "credible_interval: pool too small for beta");
      ci.lo = order_stat(pool, lo);
      ci.hi = kInf;
      break;
    }
    case Alternative::Greater: {
      if (index_floor(b * beta) < 1)
        throw DegenerateIndexError(
            "credible_interval: pool too small for beta");
      ci.lo = -kInf;
      ci.hi = order_stat(pool, std::min(n, index_ceil(b * (1.0 - beta))));
      break;
    }
  }
  return ci;
}

MhIntervalResult mh_interval(const Sample& data, double beta, Alternative alt,
                             const MhConfig& cfg, std::size_t s) {
  const SkewTParams init = initial_guess(data);
  const PosteriorChain chain = run_chain(data, init, cfg);

  // Half-t degeneracy: the skewness has run away with a stable sign, so
  // one tail of the predictive distribution has collapsed.
  std::vector<double> alphas;
  alphas.reserve(chain.draws.size());
  bool all_pos = true, all_neg = true;
  for (const SkewTParams& p : chain.draws) {
    alphas.push_back(std::abs(p.alpha));
    all_pos = all_pos && p.alpha > 0.0;
    all_neg = all_neg && p.alpha < 0.0;
  }
  std::nth_element(alphas.begin(), alphas.begin() + alphas.size() / 2,
                   alphas.end());
  const double median_abs_alpha = alphas[alphas.size() / 2];
  const bool degenerate = median_abs_alpha > 1e3 && (all_pos || all_neg);

  const Sample pool =
      predictive_pool(chain, s, mix_seed(cfg.seed, 0x706f6f6cULL));
  std::optional<int> sign;
  if (degenerate && alt == Alternative::TwoSided) sign = all_pos ? 1 : -1;

  MhIntervalResult out;
  out.interval = credible_interval(pool, beta, alt, sign);
  out.acceptance_rate = chain.acceptance_rate;
  out.degenerate_half_t = degenerate;
  return out;
}

CredibleInterval map_interval(const Sample& data, double beta, Alternative alt,
                              const PriorKind& kind) {
  return quantile_interval(fit_map(data, kind), beta, alt);
}

CredibleInterval mle_interval(const Sample& data, double beta,
                              Alternative alt) {
  return quantile_interval(checked_fit(fit_mle(data), "mle_interval"), beta,
                           alt);
}

CredibleInterval np_interval(const Sample& data, double beta,
                             Alternative alt) {
  Sample sorted = data;
  std::sort(sorted.begin(), sorted.end());
  return credible_interval(sorted, beta, alt);
}

TestResult test_mh(double subject, const Sample& data, double beta,
                   Alternative alt, const MhConfig& cfg, std::size_t s) {
  const MhIntervalResult mi = mh_interval(data, beta, alt, cfg, s);
  TestResult r = decide(Method::MH, subject, mi.interval);
  r.chain_acceptance = mi.acceptance_rate;
  r.degenerate_half_t = mi.degenerate_half_t;
  return r;
}

TestResult test_map(double subject, const Sample& data, double beta,
                    Alternative alt, const PriorKind& kind) {
  return decide(Method::MAP, subject, map_interval(data, beta, alt, kind));
}

TestResult test_mle(double subject, const Sample& data, double beta,
                    Alternative alt) {
  return decide(Method::MLE, subject, mle_interval(data, beta, alt));
}

TestResult test_np(double subject, const Sample& data, double beta,
                   Alternative alt) {
  return decide(Method::NP, subject, np_interval(data, beta, alt));
}

}  // namespace bigpast
