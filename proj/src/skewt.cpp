#include "bigpast/skewt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bigpast/errors.hpp"
#include "bigpast/nelder_mead.hpp"
#include "bigpast/special_fn.hpp"

namespace bigpast {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double skew_arg(double z, double nu) {
  // Saturates once z*z would overflow; the limit value is exact to double
  // precision long before that.
  if (std::fabs(z) > 1e150) return std::copysign(std::sqrt(nu + 1.0), z);
  return z * std::sqrt((nu + 1.0) / (nu + z * z));
}

}  // namespace

void SkewTParams::validate() const {
  if (!(nu > 0.0)) throw std::domain_error("SkewTParams: nu must be positive");
  if (!(omega > 0.0))
    throw std::domain_error("SkewTParams: omega must be positive");
  if (!std::isfinite(alpha) || !std::isfinite(xi))
    throw std::domain_error("SkewTParams: alpha and xi must be finite");
}

double log_pdf(double x, const SkewTParams& p) {
  p.validate();
  const double z = (x - p.xi) / p.omega;
  const double w = p.alpha * skew_arg(z, p.nu);
  return kLn2 + student_t_log_pdf(z, p.nu) +
         student_t_log_cdf(w, p.nu + 1.0) - std::log(p.omega);
}

double pdf(double x, const SkewTParams& p) { return std::exp(log_pdf(x, p)); }

double cdf(double x, const SkewTParams& p) {
  p.validate();
  const double z = (x - p.xi) / p.omega;
  const double upper = student_t_cdf(z, p.nu);
  if (upper <= 0.0) return 0.0;
  // Substituting u = T(s|nu) maps the integral of the density over
  // (-inf, z] onto (0, U]; the transformed integrand 2 T(w(q(u)) | nu+1)
  // is bounded by 2, so heavy tails cost nothing. The map leaves an
  // algebraic branch point at u = 0 (the integrand approaches its plateau
  // like u^{2/nu}) and, for large |alpha|, a transition layer of width
  // O(1/|alpha|) around u = 1/2. Splitting at 1/2 puts both features at
  // interval endpoints, where tanh_sinh nodes cluster.
  auto g = [&](double u) {
    const double q = student_t_quantile(u, p.nu);
    return 2.0 * student_t_cdf(p.alpha * skew_arg(q, p.nu), p.nu + 1.0);
  };
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  auto piece = [&](double a, double b) {
    double err = 0.0;
    const double val = integrator.integrate(g, a, b, 1e-10, &err);
    if (!(err <= 1e-7) || !std::isfinite(val))
      throw NumericError("skew-t cdf: quadrature failed to converge");
    return val;
  };
  double val = piece(0.0, std::min(upper, 0.5));
  if (upper > 0.5) val += piece(0.5, upper);
  return std::min(1.0, std::max(0.0, val));
}

double quantile(double prob, const SkewTParams& p) {
  if (!(prob > 0.0 && prob < 1.0))
    throw std::domain_error("quantile: prob must lie in (0, 1)");
  p.validate();

  // Bracket the root starting from the matching Student t quantile.
  double lo = p.xi + p.omega * student_t_quantile(prob, p.nu);
  double hi = lo;
  double flo = cdf(lo, p) - prob;
  double fhi = flo;
  double step = p.omega;
  while (flo > 0.0) {
    hi = lo;
    fhi = flo;
    lo -= step;
    step *= 2.0;
    flo = cdf(lo, p) - prob;
    if (step > 1e12 * p.omega)
      throw NumericError("quantile: bracketing failed");
  }
  step = p.omega;
  while (fhi < 0.0) {
    lo = hi;
    flo = fhi;
    hi += step;
    step *= 2.0;
    fhi = cdf(hi, p) - prob;
    if (step > 1e12 * p.omega)
      throw NumericError("quantile: bracketing failed");
  }

  // Safeguarded Newton using the density as the derivative.
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double fx = cdf(x, p) - prob;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    if (std::abs(fx) < 1e-10) return x;
    const double d = pdf(x, p);
    double next = (d > 1e-300) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-13 * (1.0 + std::abs(x))) return next;
    x = next;
  }
  return x;
}

double sample_one(const SkewTParams& p, Rng& rng) {
  const double delta = p.alpha / std::sqrt(1.0 + p.alpha * p.alpha);
  const double u0 = rng.normal();
  const double u1 = rng.normal();
  const double s = delta * std::abs(u0) +
                   std::sqrt(1.0 - delta * delta) * u1;
  const double v = rng.chi_squared(p.nu) / p.nu;
  return p.xi + p.omega * s / std::sqrt(v);
}

Sample sample(const SkewTParams& p, std::size_t n, std::uint64_t seed) {
  p.validate();
  if (n == 0) throw std::domain_error("sample: n must be at least 1");
  Rng rng(seed);
  Sample out(n);
  for (auto& x : out) x = sample_one(p, rng);
  return out;
}

Moments moments(const SkewTParams& p) {
  p.validate();
  if (!(p.nu > 1.0))
    throw std::domain_error("moments: mean undefined for nu <= 1");
  const double delta = p.alpha / std::sqrt(1.0 + p.alpha * p.alpha);
  const double b =
      std::sqrt(p.nu) *
      std::exp(ln_gamma(0.5 * (p.nu - 1.0)) - ln_gamma(0.5 * p.nu)) /
      std::sqrt(M_PI);
  Moments m;
  m.mean = p.xi + p.omega * delta * b;
  if (!(p.nu > 2.0))
    throw std::domain_error("moments: variance undefined for nu <= 2");
  m.variance =
      p.omega * p.omega * (p.nu / (p.nu - 2.0) - b * b * delta * delta);
  return m;
}

double log_likelihood(const Sample& data, const SkewTParams& p) {
  if (data.empty())
    throw std::domain_error("log_likelihood: sample must be nonempty");
  double acc = 0.0;
  for (const double x : data) acc += log_pdf(x, p);
  return acc;
}

SkewTParams initial_guess(const Sample& data) {
  if (data.size() < 2)
    throw std::domain_error("initial_guess: need at least 2 observations");
  Sample sorted = data;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  auto quart = [&](double q) {
    const double pos = q * (n - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - i;
    return (i + 1 < n) ? sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
                       : sorted[i];
  };
  const double median = quart(0.5);
  double spread = (quart(0.75) - quart(0.25)) / 1.35;
  if (spread <= 0.0) {
    double mean = 0.0;
    for (const double x : data) mean += x / n;
    double var = 0.0;
    for (const double x : data) var += (x - mean) * (x - mean) / (n - 1);
    spread = std::sqrt(var);
  }
  if (spread <= 0.0)
    throw std::domain_error("initial_guess: data has zero spread");

  double m2 = 0.0, m3 = 0.0, mean = 0.0;
  for (const double x : data) mean += x / n;
  for (const double x : data) {
    const double d = x - mean;
    m2 += d * d / n;
    m3 += d * d * d / n;
  }
  const double skew = (m2 > 0.0) ? m3 / std::pow(m2, 1.5) : 0.0;

  SkewTParams init;
  init.alpha = (skew == 0.0) ? 0.0
                             : std::copysign(std::min(5.0, 2.0 * std::abs(skew)),
                                             skew);
  init.nu = 10.0;
  init.xi = median;
  init.omega = spread;
  return init;
}

FitResult fit_objective(const SkewTParams& init,
                        const std::function<double(const SkewTParams&)>& objective) {
  init.validate();
  const std::vector<double> x0 = {init.alpha, std::log(init.nu), init.xi,
                                  std::log(init.omega)};
  const std::vector<double> steps = {0.5, 0.3, 0.5 * init.omega, 0.3};
  auto f = [&](const std::vector<double>& t) {
    if (std::abs(t[1]) > 50.0 || std::abs(t[3]) > 50.0)
      return std::numeric_limits<double>::infinity();
    const SkewTParams p{t[0], std::exp(t[1]), t[2], std::exp(t[3])};
    double v;
    try {
      v = -objective(p);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
    return std::isfinite(v) ? v
                            : std::numeric_limits<double>::infinity();
  };
  const SimplexResult r = nelder_mead(f, x0, steps, 2000, 1e-8);
  FitResult out;
  out.params = SkewTParams{r.x[0], std::exp(r.x[1]), r.x[2], std::exp(r.x[3])};
  out.converged = r.converged && std::isfinite(r.fmin);
  out.objective = -r.fmin;
  out.iterations = r.iterations;
  return out;
}

FitResult fit_mle(const Sample& data, const SkewTParams& init) {
  if (data.size() < 8)
    throw std::domain_error("fit_mle: need at least 8 observations");
  return fit_objective(init, [&](const SkewTParams& p) {
    return log_likelihood(data, p);
  });
}

FitResult fit_mle(const Sample& data) {
  if (data.size() < 8)
    throw std::domain_error("fit_mle: need at least 8 observations");
  return fit_mle(data, initial_guess(data));
}

}  // namespace bigpast
