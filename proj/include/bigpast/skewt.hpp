#pragma once

// The skewed Student t distribution: density, CDF, quantiles, sampling,
// moments, likelihood, and maximum-likelihood fitting.
//
// The standardized density is f(z | alpha, nu) = 2 t(z | nu) T(w | nu+1)
// with w = alpha z sqrt((nu+1)/(nu+z^2)); location xi and scale omega enter
// as f((x - xi)/omega)/omega.

#include <cstdint>
#include <functional>
#include <vector>

#include "bigpast/rng.hpp"

namespace bigpast {

struct SkewTParams {
  double alpha = 0.0;  // skewness
  double nu = 1.0;     // degrees of freedom, > 0
  double xi = 0.0;     // location
  double omega = 1.0;  // scale, > 0

  void validate() const;
};

// A control-group sample; order is preserved, sorting is explicit.
using Sample = std::vector<double>;

struct Moments {
  double mean;
  double variance;
};

struct FitResult {
  SkewTParams params;
  bool converged = false;
  double objective = 0.0;  // log-likelihood (or log-posterior for MAP fits)
  int iterations = 0;
};

double pdf(double x, const SkewTParams& p);
double log_pdf(double x, const SkewTParams& p);

// CDF by adaptive quadrature (absolute tolerance 1e-9).
double cdf(double x, const SkewTParams& p);

// Inverse CDF by bracketed root-finding; cdf(quantile(p)) = p within 1e-8.
double quantile(double prob, const SkewTParams& p);

// n i.i.d. draws via the scale-mixture representation
// x = xi + omega * (delta |U0| + sqrt(1-delta^2) U1) / sqrt(V), V ~ chi2_nu/nu.
Sample sample(const SkewTParams& p, std::size_t n, std::uint64_t seed);
double sample_one(const SkewTParams& p, Rng& rng);

// Mean requires nu > 1, variance nu > 2; throws std::domain_error otherwise.
Moments moments(const SkewTParams& p);

double log_likelihood(const Sample& data, const SkewTParams& p);

// Simplex MLE in the transformed space (alpha, log nu, xi, log omega).
// Data-driven initialization when no starting point is given.
FitResult fit_mle(const Sample& data);
FitResult fit_mle(const Sample& data, const SkewTParams& init);

// Shared initializer (median/IQR/skewness heuristics), also used to start
// the MH chain and the MAP fitter.
SkewTParams initial_guess(const Sample& data);

// Maximizes an arbitrary objective over the transformed parameter space;
// backs both fit_mle and the MAP fitter in the priors module.
FitResult fit_objective(const SkewTParams& init,
                        const std::function<double(const SkewTParams&)>& f);

}  // namespace bigpast
