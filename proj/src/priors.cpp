#include "bigpast/priors.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "bigpast/errors.hpp"
#include "bigpast/special_fn.hpp"

namespace bigpast {

namespace {

// Degree-7 polynomial in log(nu), highest power first.
constexpr double kSigmaCoef[8] = {0.00000543,  -0.00016303, 0.00199613,
                                  -0.01285016, 0.04631303,  -0.08761023,
                                  0.05036188,  1.62021189};

double g1(double nu) {
  return -0.25 * (digamma(0.5 * nu + 1.0) - digamma(0.5 * (nu + 1.0)));
}

double d_nu(double nu, double c_nu) {
  return -0.5 * digamma(0.5 * nu) + 0.5 * digamma(0.5 * (nu + 2.0)) +
         2.0 * c_nu * g1(nu);
}

struct FisherKey {
  double alpha;
  double nu;
  double c_nu;

  bool operator==(const FisherKey& o) const {
    return alpha == o.alpha && nu == o.nu && c_nu == o.c_nu;
  }
};

struct FisherKeyHash {
  std::size_t operator()(const FisherKey& k) const {
    auto bits = [](double v) {
      std::uint64_t u;
      std::memcpy(&u, &v, sizeof u);
      return u;
    };
    std::uint64_t h = bits(k.alpha);
    h = h * 1099511628211ULL ^ bits(k.nu);
    h = h * 1099511628211ULL ^ bits(k.c_nu);
    return static_cast<std::size_t>(h);
  }
};

bool in_uniform_box(const SkewTParams& p) {
  return std::abs(p.alpha) <= 1e4 && p.nu > 0.0 && p.nu <= 1e4 &&
         std::abs(p.xi) <= 1e6 && p.omega > 0.0 && p.omega <= 1e6;
}

double log_fonseca_pi_nu(double nu) {
  if (!(nu > 0.0)) throw std::domain_error("fonseca_pi_nu: nu must be positive");
  const double bracket = trigamma(0.5 * nu) - trigamma(0.5 * (nu + 1.0)) -
                         2.0 * (nu + 3.0) / (nu * (nu + 1.0) * (nu + 1.0));
  if (!(bracket > 0.0))
    throw NumericError("fonseca_pi_nu: nonpositive bracket");
  return 0.5 * (std::log(nu) - std::log(nu + 3.0)) + 0.5 * std::log(bracket);
}

}  // namespace

PriorKind PriorKind::jeffreys(double c_nu) {
  if (!(c_nu >= 0.0 && c_nu <= 1.0))
    throw std::domain_error("PriorKind: c_nu must lie in [0, 1]");
  return PriorKind{PriorFamily::JeffreysJ, c_nu};
}

PriorKind PriorKind::branco() { return PriorKind{PriorFamily::BrancoB, 1.0}; }
PriorKind PriorKind::dette() { return PriorKind{PriorFamily::DetteD, 1.0}; }
PriorKind PriorKind::uniform() { return PriorKind{PriorFamily::Uniform, 1.0}; }

double sigma_nu(double nu, bool* clamped) {
  if (!(nu > 0.0)) throw std::domain_error("sigma_nu: nu must be positive");
  if (clamped) *clamped = nu < 1.0;
  if (nu < 1.0) nu = 1.0;
  if (nu > 2400.0) return 1.5536;
  const double L = std::log(nu);
  double acc = 0.0;
  for (const double c : kSigmaCoef) acc = acc * L + c;
  return acc;
}

double fisher_i_alpha_alpha(double alpha, double nu) {
  const double s = sigma_nu(nu + 1.0);
  const double s2 = s * s;
  const double x = -alpha * alpha / s2;
  const double pref =
      M_PI * std::exp(2.0 * (ln_gamma(0.5 * nu + 1.0) -
                             ln_gamma(0.5 * (nu + 1.0))));
  if (std::abs(alpha) < 1e-3) {
    // Two-term series of (F(nu+1) - F(nu+2))/alpha^2 around alpha = 0.
    const double c = 0.5 * (nu + 1.0);
    const double t1 = 0.5 / (c * s2);
    const double t2 =
        -0.75 * (nu + 2.0) / (c * (c + 1.0)) * (alpha * alpha) / (s2 * s2);
    return pref * (t1 + t2);
  }
  const double f1 = gauss_2f1(0.5, nu + 1.0, 0.5 * (nu + 1.0), x);
  const double f2 = gauss_2f1(0.5, nu + 2.0, 0.5 * (nu + 1.0), x);
  return pref * (f1 - f2) / (alpha * alpha);
}

double fisher_i_nu_nu(double alpha, double nu, double c_nu) {
  const double s = sigma_nu(nu + 1.0);
  const double s2 = s * s;
  const double x = -alpha * alpha / s2;
  const double h1 = gauss_2f1(0.5, nu + 1.0, 0.5 * (nu + 3.0), x);
  const double h2 = gauss_2f1(0.5, nu + 2.0, 0.5 * (nu + 3.0), x);
  const double h3 = gauss_2f1(1.5, nu + 1.0, 0.5 * (nu + 5.0), x);
  const double h4 = gauss_2f1(1.5, nu + 2.0, 0.5 * (nu + 5.0), x);
  const double log_pref =
      2.5 * std::log(M_PI) + ln_gamma(0.5 * nu + 1.0) -
      std::log(8.0) - 2.0 * std::log(nu) - ln_gamma(0.5 * (nu + 5.0)) -
      ln_beta(0.5 * nu, 0.5) - 2.0 * ln_beta(0.5 * (nu + 1.0), 0.5);
  const double eh =
      std::exp(log_pref) * ((nu + 3.0) * h1 - (nu + 3.0) * h2 - h3 + h4);
  const double dg = digamma(0.5 * nu) - digamma(0.5 * (nu + 1.0));
  const double elog2 =
      dg * dg + trigamma(0.5 * nu) - trigamma(0.5 * (nu + 1.0));
  const double d = d_nu(nu, c_nu);
  // The cross term d_nu * E[(z^2-1)/(nu+z^2)] is dropped: that expectation
  // is exactly zero under the t(nu) density.
  return eh + 0.25 * elog2 + 0.5 / (nu * (nu + 3.0)) + d * d + d * dg -
         1.0 / (nu * (nu + 1.0));
}

double fisher_i_alpha_nu(double alpha, double nu) {
  if (alpha == 0.0) return 0.0;
  const double s = sigma_nu(nu + 1.0);
  const double s2 = s * s;
  const double x = -alpha * alpha / s2;
  const double h5 = gauss_2f1(-0.5, nu + 2.0, 0.5 * (nu + 5.0), x);
  const double h6 = gauss_2f1(0.5, nu + 2.0, 0.5 * (nu + 5.0), x);
  const double log_gammas = 2.0 * ln_gamma(0.5 * nu + 1.0) -
                            ln_gamma(0.5 * (nu + 1.0)) -
                            ln_gamma(0.5 * (nu + 5.0));
  const double e =
      M_PI * alpha * std::exp(log_gammas) /
      (8.0 * (alpha * alpha + s2)) *
      ((nu + 4.0) * h5 -
       (alpha * alpha * (2.0 * nu + 3.0) + (nu + 3.0) * s2) * h6 / s2);
  return -e;
}

FisherBlock fisher_block(double alpha, double nu, double c_nu) {
  thread_local std::unordered_map<FisherKey, FisherBlock, FisherKeyHash> cache;
  const FisherKey key{alpha, nu, c_nu};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  FisherBlock fb;
  fb.i_aa = fisher_i_alpha_alpha(alpha, nu);
  fb.i_nn = fisher_i_nu_nu(alpha, nu, c_nu);
  fb.i_an = fisher_i_alpha_nu(alpha, nu);
  if (cache.size() >= 4096) cache.clear();
  cache.emplace(key, fb);
  return fb;
}

double fonseca_pi_nu(double nu) { return std::exp(log_fonseca_pi_nu(nu)); }

double log_prior(const SkewTParams& p, const PriorKind& kind) {
  p.validate();
  switch (kind.family) {
    case PriorFamily::JeffreysJ: {
      const FisherBlock fb = fisher_block(p.alpha, p.nu, kind.c_nu);
      const double det = fb.det();
      if (det < 0.0)
        throw NumericError("log_prior: negative Fisher determinant");
      return -std::log(p.omega) + 0.5 * std::log(det);
    }
    case PriorFamily::BrancoB:
      return -std::log(p.omega) -
             0.75 * std::log(8.0 * p.alpha * p.alpha + M_PI * M_PI) +
             log_fonseca_pi_nu(p.nu);
    case PriorFamily::DetteD:
      return -std::log(p.omega) - std::log(M_PI) -
             std::log1p(p.alpha * p.alpha) + log_fonseca_pi_nu(p.nu);
    case PriorFamily::Uniform:
      return in_uniform_box(p) ? -std::log(p.omega)
                               : -std::numeric_limits<double>::infinity();
  }
  throw std::logic_error("log_prior: unknown prior family");
}

double log_posterior(const Sample& data, const SkewTParams& p,
                     const PriorKind& kind) {
  const double lp = log_prior(p, kind);
  if (!std::isfinite(lp)) return lp;
  return log_likelihood(data, p) + lp;
}

SkewTParams fit_map(const Sample& data, const PriorKind& kind,
                    const std::optional<SkewTParams>& init) {
  if (data.size() < 8)
    throw std::domain_error("fit_map: need at least 8 observations");
  const SkewTParams start = init ? *init : initial_guess(data);
  const FitResult r = fit_objective(start, [&](const SkewTParams& p) {
    return log_posterior(data, p, kind);
  });
  return r.params;
}

}  // namespace bigpast
