#pragma once

#include <optional>

#include "bigpast/skewt.hpp"

namespace bigpast {

// Prior families over (alpha, nu, xi, omega). JeffreysJ carries the c_nu
// constant used in the d_nu term of the Fisher nu-nu entry; the other
// families ignore it.
enum class PriorFamily { JeffreysJ, BrancoB, DetteD, Uniform };

struct PriorKind {
  PriorFamily family = PriorFamily::JeffreysJ;
  double c_nu = 1.0;

  static PriorKind jeffreys(double c_nu = 1.0);
  static PriorKind branco();
  static PriorKind dette();
  static PriorKind uniform();
};

// The (alpha, nu) block of the expected Fisher information for the
// standardized skew t. Validity requires a nonnegative determinant.
struct FisherBlock {
  double i_aa = 0.0;
  double i_nn = 0.0;
  double i_an = 0.0;

  double det() const { return i_aa * i_nn - i_an * i_an; }
};

// Polynomial approximation of the scale constant sigma_nu, valid for
// nu >= 1; above 2400 the curve is flat at 1.5536. Inputs below 1 are
// clamped to 1 and reported through `clamped` when provided.
double sigma_nu(double nu, bool* clamped = nullptr);

// Closed-form Fisher entries. i_alpha_alpha switches to a two-term series
// in alpha^2 when |alpha| < 1e-3 where the printed form is 0/0.
double fisher_i_alpha_alpha(double alpha, double nu);
double fisher_i_nu_nu(double alpha, double nu, double c_nu);
double fisher_i_alpha_nu(double alpha, double nu);

// All three entries at once, memoized per thread on (alpha, nu, c_nu).
FisherBlock fisher_block(double alpha, double nu, double c_nu);

// Reference prior density for the degrees of freedom, used by the Branco
// and Dette skewness priors.
double fonseca_pi_nu(double nu);

// Unnormalized log prior density. The Jeffreys family throws NumericError
// when the Fisher determinant is negative; the Uniform family returns
// -infinity outside its support box.
double log_prior(const SkewTParams& p, const PriorKind& kind);

// log_likelihood + log_prior.
double log_posterior(const Sample& data, const SkewTParams& p,
                     const PriorKind& kind);

// Posterior mode via the same simplex search as fit_mle. Without an
// explicit init the moment-based initializer seeds the search.
SkewTParams fit_map(const Sample& data, const PriorKind& kind,
                    const std::optional<SkewTParams>& init = std::nullopt);

}  // namespace bigpast
