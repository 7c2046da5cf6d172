#include "bigpast/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "bigpast/errors.hpp"

namespace bigpast {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;  // log sqrt(2 pi)

// Lanczos series, 15 coefficients, g = 607/128 (Godfrey's tabulation).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: x must be positive");
  double acc = kLanczos[0];
  for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (x - 1.0 + k);
  const double w = x + kLanczosG - 0.5;
  return kLnSqrt2Pi + (x - 0.5) * std::log(w) - w + std::log(acc);
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be positive");
  double r = 0.0;
  while (x < 10.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double f = 1.0 / (x * x);
  const double tail =
      f * (1.0 / 12.0 -
           f * (1.0 / 120.0 -
                f * (1.0 / 252.0 -
                     f * (1.0 / 240.0 -
                          f * (1.0 / 132.0 - f * (691.0 / 32760.0))))));
  return r + std::log(x) - 0.5 / x - tail;
}

double trigamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("trigamma: x must be positive");
  double r = 0.0;
  while (x < 10.0) {
    r += 1.0 / (x * x);
    x += 1.0;
  }
  const double f = 1.0 / (x * x);
  const double tail =
      1.0 / 6.0 -
      f * (1.0 / 30.0 - f * (1.0 / 42.0 - f * (1.0 / 30.0 - f * (5.0 / 66.0))));
  return r + 1.0 / x + 0.5 * f + f / x * tail;
}

double ln_beta(double a, double b) {
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("reg_inc_beta: a, b must be positive");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("reg_inc_beta: x must lie in [0, 1]");
  return boost::math::ibeta(a, b, x);
}

double reg_inc_beta_inv(double a, double b, double p) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("reg_inc_beta_inv: a, b must be positive");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("reg_inc_beta_inv: p must lie in [0, 1]");
  return boost::math::ibeta_inv(a, b, p);
}

namespace {

// Maclaurin series of 2F1; `y` may be the original argument or the Pfaff
// transformed one. Throws if terms blow up or the sum fails to settle.
double series_2f1(double a, double b, double c, double y) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * y;
    sum += term;
    if (std::abs(term) > 1e250)
      throw NumericError("gauss_2f1: series terms diverge");
    if (k > 2 && std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  throw NumericError("gauss_2f1: series failed to converge");
}

double euler_2f1(double a, double b, double c, double z);

// Euler integral representation, valid for c > a > 0 and z < 1.
double euler_integral_2f1(double a, double b, double c, double z) {
  static thread_local boost::math::quadrature::tanh_sinh<double> quad(12);
  // Two-argument form: tc is the distance to the nearest endpoint, which
  // keeps log(t) and log(1-t) exact where the quadrature nodes crowd the
  // endpoint singularities.
  auto f = [&](double t, double tc) {
    const bool left = t < 0.5;
    const double log_t = left ? std::log(t) : std::log1p(-tc);
    const double log_1mt = left ? std::log1p(-t) : std::log(tc);
    return std::exp((a - 1.0) * log_t + (c - a - 1.0) * log_1mt -
                    b * std::log1p(-z * t));
  };
  double err = 0.0;
  const double val = quad.integrate(f, 0.0, 1.0, 1e-11, &err);
  if (!std::isfinite(val) || (std::abs(val) > 0 && err > 1e-7 * std::abs(val)))
    throw NumericError("gauss_2f1: Euler quadrature did not converge");
  return std::exp(ln_gamma(c) - ln_gamma(a) - ln_gamma(c - a)) * val;
}

double euler_2f1(double a, double b, double c, double z) {
  if (c > a && a > 0.0) return euler_integral_2f1(a, b, c, z);
  if (c > b && b > 0.0) return euler_integral_2f1(b, a, c, z);
  if (a <= 0.0) {
    // Shift a upward with the Gauss contiguous relation
    //   (c-a) F(a-1) + (2a-c+(b-a)z) F(a) + a(z-1) F(a+1) = 0.
    const double s = a + 1.0;
    if (c == s) throw NumericError("gauss_2f1: contiguous shift hit c = a+1");
    const double f1 = euler_2f1(s, b, c, z);
    const double f2 = euler_2f1(s + 1.0, b, c, z);
    return -((2.0 * s - c + (b - s) * z) * f1 + s * (z - 1.0) * f2) / (c - s);
  }
  throw NumericError("gauss_2f1: no valid Euler representation");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double zarg) {
  if (c <= 0.0 && c == std::floor(c))
    throw std::domain_error("gauss_2f1: c is a non-positive integer");
  if (zarg > 0.0)
    throw std::domain_error("gauss_2f1: argument must be non-positive");
  if (zarg == 0.0 || a == 0.0 || b == 0.0) return 1.0;

  // Direct series when the argument is small and the early term ratio
  // (|z| b / c for large b) cannot blow up before the asymptotic decay.
  if (zarg > -0.8) {
    const double transient =
        std::abs(zarg) * (std::max(std::abs(a), std::abs(b)) + 1.0) /
        (std::abs(c) + 1.0);
    if (transient < 0.5) return series_2f1(a, b, c, zarg);
  }
  // Pfaff transformation maps z < 0 to y = z/(z-1) in (0, 1); the mapped
  // series converges geometrically while y stays away from 1.
  if (zarg >= -2.5) {
    const double y = zarg / (zarg - 1.0);
    return std::pow(1.0 - zarg, -a) * series_2f1(a, c - b, c, y);
  }
  // Large |z|: adaptive quadrature of the Euler integral, which has no
  // degenerate parameter cases in this family.
  return euler_2f1(a, b, c, zarg);
}

// Above this the log-gamma difference in the t normalising constant loses
// more precision than the asymptotic expansions it replaces.
constexpr double kHugeDf = 1e8;

double student_t_log_pdf(double x, double df) {
  if (!(df > 0.0)) throw std::domain_error("student_t: df must be positive");
  if (df >= kHugeDf) {
    // ln G((v+1)/2) - ln G(v/2) = ln sqrt(v/2) - 1/(4v) + O(v^-3); the
    // direct difference of two O(v ln v) values is no longer exact here.
    return -kLnSqrt2Pi - 0.25 / df -
           0.5 * (df + 1.0) * std::log1p(x * x / df);
  }
  return ln_gamma(0.5 * (df + 1.0)) - ln_gamma(0.5 * df) -
         0.5 * std::log(df * kPi) -
         0.5 * (df + 1.0) * std::log1p(x * x / df);
}

double student_t_pdf(double x, double df) {
  return std::exp(student_t_log_pdf(x, df));
}

double student_t_cdf(double x, double df) {
  if (!(df > 0.0)) throw std::domain_error("student_t: df must be positive");
  if (x == 0.0) return 0.5;
  if (df >= kHugeDf) {
    // Cornish-Fisher: T(x|v) = Phi(x) - phi(x) (x^3 + x) / (4v) + O(v^-2).
    double p = normal_cdf(x);
    if (std::fabs(x) < 40.0)
      p -= normal_pdf(x) * (x * x * x + x) / (4.0 * df);
    return std::min(1.0, std::max(0.0, p));
  }
  const double x2 = x * x;
  if (x < 0.0)
    return 0.5 * boost::math::ibeta(0.5 * df, 0.5, df / (df + x2));
  return 0.5 + 0.5 * boost::math::ibeta(0.5, 0.5 * df, x2 / (df + x2));
}

double student_t_log_cdf(double x, double df) {
  const double p = student_t_cdf(x, df);
  if (p > 1e-290) return std::log(p);
  if (df >= kHugeDf) {
    // Mills-style tail: T(x) ~ t(x) (v + x^2) / (|x| (v - 1)), exact in
    // both the normal-like and the polynomial-tail limits.
    return student_t_log_pdf(x, df) +
           std::log((df + x * x) / (-x * (df - 1.0)));
  }
  // Deep lower tail where the incomplete beta underflows:
  // I_u(a, 1/2) ~ u^a (1-u)^{1/2} / (a B(a, 1/2)) as u -> 0.
  const double a = 0.5 * df;
  const double u = df / (df + x * x);
  return std::log(0.5) + a * std::log(u) + 0.5 * std::log1p(-u) -
         std::log(a) - ln_beta(a, 0.5);
}

double student_t_quantile(double p, double df) {
  if (!(df > 0.0)) throw std::domain_error("student_t: df must be positive");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("student_t_quantile: p must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  if (df >= kHugeDf) {
    const double z = normal_quantile(p);
    return z + (z * z * z + z) / (4.0 * df);
  }
  if (std::fabs(p - 0.5) < 1e-10) {
    // Symmetry kills the quadratic term, so the linearization at the median
    // is cubic-accurate; ibeta_inv would be asked for 1 - u ~ (p - 1/2)^2
    // here, beyond what its root-finder resolves.
    return (p - 0.5) / student_t_pdf(0.0, df);
  }
  const double tail = std::min(p, 1.0 - p);
  if (tail < 1e-270) {
    // Power-law tail inversion: T(x|v) ~ (v/(v+x^2))^{v/2} / (v B(v/2, 1/2))
    // as x -> -inf. ibeta_inv cannot resolve probabilities this small, and
    // the first-term error here is O(v/x^2), far below double precision.
    const double log_arg = std::log(tail) + std::log(df) + ln_beta(0.5 * df, 0.5);
    const double e = -2.0 * log_arg / df;
    const double mag = 0.5 * (e + std::log(df)) > 700.0
                           ? std::numeric_limits<double>::infinity()
                           : std::sqrt(df * std::expm1(e));
    return p < 0.5 ? -mag : mag;
  }
  const double q2 = 2.0 * tail;
  double x;
  if (q2 > 0.5) {
    // Inner half: Newton in x from the median linearization, using only the
    // forward incomplete beta. ibeta_inv's root-finder can spin whenever
    // the half shape parameter meets a small tail argument, which both
    // orderings hit somewhere in this region.
    x = (tail - 0.5) / student_t_pdf(0.0, df);
    for (int i = 0; i < 8; ++i) {
      const double step =
          (student_t_cdf(x, df) - tail) / student_t_pdf(x, df);
      x -= step;
      if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
    }
  } else {
    const double u = boost::math::ibeta_inv(0.5 * df, 0.5, q2);
    x = -std::sqrt(df * (1.0 - u) / u);
  }
  if (p > 0.5) x = -x;
  // Newton polish on the CDF; skip when the density is too small to help.
  for (int i = 0; i < 2; ++i) {
    const double d = student_t_pdf(x, df);
    if (d < 1e-300) break;
    x -= (student_t_cdf(x, df) - p) / d;
  }
  return x;
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x - kLnSqrt2Pi);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.70710678118654752440);
}

double normal_log_cdf(double x) {
  if (x > 8.0) return -normal_cdf(-x);  // log(1 - e) = -e to double precision
  if (x > -10.0) return std::log(normal_cdf(x));
  const double t = 1.0 / (x * x);
  return -0.5 * x * x - std::log(-x) - kLnSqrt2Pi +
         std::log1p(t * (-1.0 + t * (3.0 - 15.0 * t)));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  return -1.41421356237309504880 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace bigpast
