#include "bigpast/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bigpast/errors.hpp"
#include "bigpast/rng.hpp"
#include "bigpast/special_fn.hpp"

namespace bigpast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TestResult decide(Method method, double subject, CredibleInterval interval) {
  TestResult r;
  r.method = method;
  r.interval = interval;
  r.subject = subject;
  r.reject = !interval.contains(subject);
  return r;
}

// Subject-space interval for a statistic (x* - center)/scale compared to
// quantiles of a symmetric reference distribution.
CredibleInterval pivot_interval(double center, double scale, double beta,
                                Alternative alt,
                                const std::function<double(double)>& quant) {
  CredibleInterval ci;
  ci.beta = beta;
  ci.alternative = alt;
  switch (alt) {
    case Alternative::TwoSided:
      ci.lo = center + scale * quant(0.5 * beta);
      ci.hi = center + scale * quant(1.0 - 0.5 * beta);
      break;
    case Alternative::Less:
      ci.lo = center + scale * quant(beta);
      ci.hi = kInf;
      break;
    case Alternative::Greater:
      ci.lo = -kInf;
      ci.hi = center + scale * quant(1.0 - beta);
      break;
  }
  return ci;
}

// Averaged lower-tail probability of the subject under the posterior draws.
struct CgDraws {
  std::vector<double> mu;
  std::vector<double> sigma;

  double lower_tail(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      acc += normal_cdf((x - mu[i]) / sigma[i]);
    return acc / static_cast<double>(mu.size());
  }

  double density(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      acc += normal_pdf((x - mu[i]) / sigma[i]) / sigma[i];
    return acc / static_cast<double>(mu.size());
  }
};

// Subject value where the averaged lower tail equals target; the tail is a
// smooth strictly increasing function of the subject.
double cg_cut(const CgDraws& d, double target, double center, double spread) {
  double lo = center, hi = center;
  double step = spread;
  while (d.lower_tail(lo) > target) {
    lo -= step;
    step *= 2.0;
    if (step > 1e9 * spread) throw NumericError("cg_cut: bracketing failed");
  }
  step = spread;
  while (d.lower_tail(hi) < target) {
    hi += step;
    step *= 2.0;
    if (step > 1e9 * spread) throw NumericError("cg_cut: bracketing failed");
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = d.lower_tail(x) - target;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    if (std::abs(f) < 1e-12) break;
    const double dens = d.density(x);
    double next = (dens > 1e-300) ? x - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-11 * (1.0 + std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace

GaussianSummary GaussianSummary::from(const Sample& data) {
  if (data.size() < 2)
    throw std::domain_error("GaussianSummary: need at least 2 observations");
  const double n = static_cast<double>(data.size());
  double mean = 0.0;
  for (const double x : data) mean += x / n;
  double ss = 0.0;
  for (const double x : data) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0))
    throw std::domain_error("GaussianSummary: sample has zero variance");
  return GaussianSummary{mean, sd, data.size()};
}

TestResult crawford_t(double subject, const GaussianSummary& summ, double beta,
                      Alternative alt) {
  if (!(summ.sd > 0.0)) throw std::domain_error("crawford_t: sd must be > 0");
  if (summ.n < 2) throw std::domain_error("crawford_t: need n >= 2");
  const double n = static_cast<double>(summ.n);
  const double se = summ.sd * std::sqrt((n + 1.0) / n);
  const double df = n - 1.0;
  return decide(Method::T, subject,
                pivot_interval(summ.mean, se, beta, alt, [df](double q) {
                  return student_t_quantile(q, df);
                }));
}

TestResult z_score(double subject, const GaussianSummary& summ, double beta,
                   Alternative alt) {
  if (!(summ.sd > 0.0)) throw std::domain_error("z_score: sd must be > 0");
  return decide(Method::Z, subject,
                pivot_interval(summ.mean, summ.sd, beta, alt,
                               [](double q) { return normal_quantile(q); }));
}

TestResult crawford_garthwaite(double subject, const Sample& data, double beta,
                               Alternative alt, std::size_t draws,
                               std::uint64_t seed) {
  if (data.size() < 3)
    throw std::domain_error("crawford_garthwaite: need n >= 3");
  if (draws == 0)
    throw std::domain_error("crawford_garthwaite: draws must be >= 1");
  const GaussianSummary summ = GaussianSummary::from(data);
  const double n = static_cast<double>(summ.n);

  CgDraws d;
  d.mu.resize(draws);
  d.sigma.resize(draws);
  Rng rng(seed);
  for (std::size_t i = 0; i < draws; ++i) {
    const double chi2 = rng.chi_squared(n - 1.0);
    const double var = (n - 1.0) * summ.sd * summ.sd / chi2;
    d.sigma[i] = std::sqrt(var);
    d.mu[i] = summ.mean + std::sqrt(var / n) * rng.normal();
  }

  CredibleInterval ci;
  ci.beta = beta;
  ci.alternative = alt;
  switch (alt) {
    case Alternative::TwoSided:
      ci.lo = cg_cut(d, 0.5 * beta, summ.mean, summ.sd);
      ci.hi = cg_cut(d, 1.0 - 0.5 * beta, summ.mean, summ.sd);
      break;
    case Alternative::Less:
      ci.lo = cg_cut(d, beta, summ.mean, summ.sd);
      ci.hi = kInf;
      break;
    case Alternative::Greater:
      ci.lo = -kInf;
      ci.hi = cg_cut(d, 1.0 - beta, summ.mean, summ.sd);
      break;
  }
  return decide(Method::CG, subject, ci);
}

TestResult anderson_darling_subject(double subject, const Sample& data,
                                    double beta, Alternative alt) {
  if (data.size() < 8)
    throw std::domain_error("anderson_darling_subject: need n >= 8");
  Sample sorted = data;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const long ni = static_cast<long>(sorted.size());

  // Retention in the lower tail needs rank r with (r + 0.5)/(n + 1) >= q,
  // i.e. at least ceil(q(n+1) - 0.5) controls strictly below the subject.
  auto lower_cut = [&](double q) {
    const long k = static_cast<long>(std::ceil(q * (n + 1.0) - 0.5 - 1e-9));
    if (k > ni)
      throw std::domain_error("anderson_darling_subject: beta too large for n");
    return (k < 1) ? -kInf : sorted[static_cast<std::size_t>(k - 1)];
  };
  // Upper tail: retention needs r <= n + 0.5 - q(n+1), so the subject must
  // not exceed the (K+1)-th order statistic.
  auto upper_cut = [&](double q) {
    const long k =
        static_cast<long>(std::floor(n + 0.5 - q * (n + 1.0) + 1e-9)) + 1;
    if (k < 1)
      throw std::domain_error("anderson_darling_subject: beta too large for n");
    return (k > ni) ? kInf : sorted[static_cast<std::size_t>(k - 1)];
  };

  CredibleInterval ci;
  ci.beta = beta;
  ci.alternative = alt;
  switch (alt) {
    case Alternative::TwoSided:
      ci.lo = lower_cut(0.5 * beta);
      ci.hi = upper_cut(0.5 * beta);
      break;
    case Alternative::Less:
      ci.lo = lower_cut(beta);
      ci.hi = kInf;
      break;
    case Alternative::Greater:
      ci.lo = -kInf;
      ci.hi = upper_cut(beta);
      break;
  }
  return decide(Method::AD, subject, ci);
}

TestResult arcsinh_wrap(
    const std::function<TestResult(double, const Sample&)>& test,
    double subject, const Sample& data) {
  Sample transformed(data.size());
  std::transform(data.begin(), data.end(), transformed.begin(),
                 [](double x) { return std::asinh(x); });
  TestResult r = test(std::asinh(subject), transformed);
  r.subject = subject;
  r.interval.lo = std::sinh(r.interval.lo);
  r.interval.hi = std::sinh(r.interval.hi);
  if (r.method == Method::CG) r.method = Method::CGHA;
  return r;
}

}  // namespace bigpast
