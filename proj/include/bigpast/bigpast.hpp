#pragma once

#include <cstdint>
#include <optional>

#include "bigpast/mh_sampler.hpp"
#include "bigpast/priors.hpp"
#include "bigpast/skewt.hpp"

namespace bigpast {

enum class Alternative { TwoSided, Less, Greater };

// Decision methods. The first four are the Bayesian/likelihood frameworks
// of this module; the rest are the comparison methods in baselines.
enum class Method { MH, MAP, MLE, NP, Z, T, CG, CGHA, AD };

struct CredibleInterval {
  double lo = 0.0;  // -infinity encodes an unbounded left side
  double hi = 0.0;  // +infinity encodes an unbounded right side
  double beta = 0.05;
  Alternative alternative = Alternative::TwoSided;

  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct TestResult {
  Method method = Method::MH;
  bool reject = false;
  CredibleInterval interval;
  double subject = 0.0;
  std::optional<double> chain_acceptance;
  bool degenerate_half_t = false;
};

// B = m*s predictive draws, one batch of s per posterior draw, sorted
// ascending. Deterministic given the seed.
Sample predictive_pool(const PosteriorChain& chain, std::size_t s,
                       std::uint64_t seed);

// Order-statistic interval of a sorted pool. Indices are 1-based with
// floor/ceiling: TwoSided uses [floor(B*beta/2), ceil(B*(1-beta/2))], the
// one-sided forms cut once at floor(B*beta) or ceil(B*(1-beta)). A
// degenerate sign (half-t limit) replaces the collapsed tail's cut with
// the extreme order statistic: + gives [x_(1), x_(ceil(B(1-beta)))],
// - gives [x_(floor(B beta)), x_(B)]. Throws DegenerateIndexError when
// the lower index falls below 1.
CredibleInterval credible_interval(const Sample& pool, double beta,
                                   Alternative alt,
                                   std::optional<int> degenerate = std::nullopt);

// Subject-independent part of each test, so replication sweeps can score
// many subjects against one control sample without redoing the heavy work.
struct MhIntervalResult {
  CredibleInterval interval;
  double acceptance_rate = 0.0;
  bool degenerate_half_t = false;
};
MhIntervalResult mh_interval(const Sample& data, double beta, Alternative alt,
                             const MhConfig& cfg, std::size_t s = 100);
CredibleInterval map_interval(const Sample& data, double beta, Alternative alt,
                              const PriorKind& kind);
CredibleInterval mle_interval(const Sample& data, double beta,
                              Alternative alt);
CredibleInterval np_interval(const Sample& data, double beta, Alternative alt);

/// The full Bayesian single-subject test: chain, predictive pool, interval,
// decision. s is the per-draw predictive batch size.
TestResult test_mh(double subject, const Sample& data, double beta,
                   Alternative alt, const MhConfig& cfg, std::size_t s = 100);

/// Plug-in variants: interval from skew-t quantiles at the fitted point.
TestResult test_map(double subject, const Sample& data, double beta,
                    Alternative alt, const PriorKind& kind);
TestResult test_mle(double subject, const Sample& data, double beta,
                    Alternative alt);

// Nonparametric empirical-quantile interval of the control data.
TestResult test_np(double subject, const Sample& data, double beta,
                   Alternative alt);

}  // namespace bigpast
