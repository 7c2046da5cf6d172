#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "bigpast/errors.hpp"
#include "bigpast/special_fn.hpp"

using namespace bigpast;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Simpson's rule on [0, 1] with an even number of panels.
double simpson01(const std::function<double(double)>& f, int panels) {
  const double h = 1.0 / panels;
  double acc = f(0.0) + f(1.0);
  for (int i = 1; i < panels; ++i)
    acc += f(i * h) * ((i % 2) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Euler integral representation of 2F1, valid for c > b > 0 and zarg < 1.
// Used as an independent route against the series/transform evaluator.
double hyp2f1_euler(double a, double b, double c, double zarg) {
  const double norm = std::exp(ln_gamma(c) - ln_gamma(b) - ln_gamma(c - b));
  auto integrand = [&](double t) {
    return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) *
           std::pow(1.0 - zarg * t, -a);
  };
  return norm * simpson01(integrand, 4000);
}

}  // namespace

TEST_CASE("gamma family reference values") {
  CHECK(ln_gamma(0.5) == doctest::Approx(0.57236494292470009).epsilon(1e-13));
  CHECK(ln_gamma(10.5) == doctest::Approx(13.940625219403764).epsilon(1e-13));
  CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ln_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(digamma(7.5) == doctest::Approx(1.9467574842460868).epsilon(1e-12));
  CHECK(trigamma(2.5) == doctest::Approx(0.49035775610023486).epsilon(1e-12));
  CHECK(trigamma(1.0) == doctest::Approx(1.6449340668482264).epsilon(1e-12));
  CHECK(trigamma(1.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
}

TEST_CASE("ln_beta matches the gamma identity") {
  for (double a : {0.5, 1.0, 2.5, 7.0})
    for (double b : {0.5, 1.5, 3.0}) {
      const double direct = ln_beta(a, b);
      const double viagamma = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
      CHECK(direct == doctest::Approx(viagamma).epsilon(1e-13));
    }
}

TEST_CASE("regularized incomplete beta and inverse") {
  CHECK(reg_inc_beta(2.0, 3.0, 0.4) == doctest::Approx(0.5248).epsilon(1e-12));
  CHECK(reg_inc_beta(2.0, 3.0, 0.0) == doctest::Approx(0.0));
  CHECK(reg_inc_beta(2.0, 3.0, 1.0) == doctest::Approx(1.0));
  for (double p : {0.001, 0.1, 0.5, 0.9, 0.999}) {
    const double x = reg_inc_beta_inv(1.5, 2.5, p);
    CHECK(reg_inc_beta(1.5, 2.5, x) == doctest::Approx(p).epsilon(1e-10));
  }
}

TEST_CASE("student t reference values") {
  CHECK(student_t_quantile(0.05, 5.0) ==
        doctest::Approx(-2.0150483733330233).epsilon(1e-12));
  CHECK(student_t_quantile(0.05, 3.0) ==
        doctest::Approx(-2.3533634348018273).epsilon(1e-12));
  CHECK(student_t_cdf(-5.0, 0.5) ==
        doctest::Approx(0.14299570157942942).epsilon(1e-12));
  CHECK(student_t_cdf(1.3, 4.0) ==
        doctest::Approx(0.86827420176438797).epsilon(1e-12));
}

TEST_CASE("student t symmetry and round trips") {
  for (double nu : {0.7, 2.0, 5.0, 37.0}) {
    for (double x : {0.1, 0.9, 2.7, 8.0}) {
      CHECK(student_t_cdf(-x, nu) ==
            doctest::Approx(1.0 - student_t_cdf(x, nu)).epsilon(1e-12));
      CHECK(student_t_pdf(-x, nu) ==
            doctest::Approx(student_t_pdf(x, nu)).epsilon(1e-12));
      CHECK(std::exp(student_t_log_pdf(x, nu)) ==
            doctest::Approx(student_t_pdf(x, nu)).epsilon(1e-12));
    }
    for (double p : {0.001, 0.05, 0.4, 0.975}) {
      const double q = student_t_quantile(p, nu);
      CHECK(student_t_cdf(q, nu) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK(student_t_cdf(0.0, nu) == doctest::Approx(0.5));
    CHECK(student_t_quantile(0.5, nu) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("student t log cdf deep tail") {
  // Against log(cdf) where the plain cdf is still representable.
  CHECK(student_t_log_cdf(-6.0, 8.0) ==
        doctest::Approx(std::log(student_t_cdf(-6.0, 8.0))).epsilon(1e-10));
  // Power-law tail: T(x|nu) ~ C |x|^-nu, so the log-cdf decays like
  // -nu log|x| and stays finite where the cdf itself underflows.
  const double l1 = student_t_log_cdf(-1e60, 4.0);
  const double l2 = student_t_log_cdf(-1e61, 4.0);
  CHECK(std::isfinite(l1));
  CHECK(l1 - l2 == doctest::Approx(4.0 * std::log(10.0)).epsilon(1e-6));
}

TEST_CASE("student t huge degrees of freedom") {
  // The asymptotic branch must join the direct evaluation continuously.
  // The direct side carries ~1e-7 log-space noise from the log-gamma
  // difference at this size, which bounds the achievable match.
  const double lo = 0.99e8, hi = 1.01e8;
  for (double x : {-3.0, -0.8, 0.6, 2.4}) {
    CHECK(student_t_cdf(x, lo) ==
          doctest::Approx(student_t_cdf(x, hi)).epsilon(1e-6));
    CHECK(student_t_log_pdf(x, lo) ==
          doctest::Approx(student_t_log_pdf(x, hi)).epsilon(1e-6));
  }
  for (double p : {0.01, 0.3, 0.95})
    CHECK(student_t_quantile(p, lo) ==
          doctest::Approx(student_t_quantile(p, hi)).epsilon(1e-6));

  // Far above the switch the normal limit holds to near machine precision.
  for (double x : {-2.0, 0.5, 3.0}) {
    CHECK(student_t_cdf(x, 1e12) ==
          doctest::Approx(normal_cdf(x)).epsilon(1e-10));
    CHECK(student_t_log_pdf(x, 1e14) ==
          doctest::Approx(std::log(normal_pdf(x))).epsilon(1e-12));
  }
  const double q = student_t_quantile(student_t_cdf(2.5, 1e9), 1e9);
  CHECK(q == doctest::Approx(2.5).epsilon(1e-9));
  // Deep tail log-cdf stays finite and tracks the normal one.
  const double lt = student_t_log_cdf(-40.0, 1e10);
  CHECK(std::isfinite(lt));
  CHECK(lt == doctest::Approx(normal_log_cdf(-40.0)).epsilon(1e-3));
}

TEST_CASE("normal distribution reference values") {
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-13));
  CHECK(normal_cdf(-5.0) ==
        doctest::Approx(2.8665157187919328e-7).epsilon(1e-12));
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_pdf(0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-14));
  for (double p : {1e-10, 0.025, 0.5, 0.999}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  }
  CHECK(normal_log_cdf(-30.0) ==
        doctest::Approx(-454.32124395634320).epsilon(1e-10));
  CHECK(normal_log_cdf(1.0) ==
        doctest::Approx(std::log(normal_cdf(1.0))).epsilon(1e-12));
}

TEST_CASE("gauss_2f1 reference values") {
  CHECK(gauss_2f1(1.0, 1.0, 2.0, -1.0) ==
        doctest::Approx(0.69314718055994531).epsilon(1e-10));
  CHECK(gauss_2f1(0.5, 4.0, 2.0, -4.0) ==
        doctest::Approx(0.3041052449399714).epsilon(1e-10));
  CHECK(gauss_2f1(0.5, 6.0, 3.0, -1e8) ==
        doctest::Approx(6.5624999890625e-5).epsilon(1e-9));
  CHECK(gauss_2f1(-0.5, 5.0, 4.0, -1e4) ==
        doctest::Approx(112.50437492187734).epsilon(1e-9));
  CHECK(gauss_2f1(-0.5, 7.0, 5.0, -39310900.59183736) ==
        doctest::Approx(7471.5600611375844).epsilon(1e-9));
  CHECK(gauss_2f1(0.3, 2.0, 2.0, -2.0) ==
        doctest::Approx(std::pow(3.0, -0.3)).epsilon(1e-12));
  CHECK(gauss_2f1(1.0, 2.0, 3.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("gauss_2f1 against the Euler integral") {
  struct Point {
    double a, b, c, z;
  };
  // Shapes chosen with integer b >= 1 and c - b >= 1 so the integrand has
  // no endpoint derivative singularities and Simpson converges at full rate.
  const std::vector<Point> pts = {
      {1.0, 1.0, 2.0, -1.0},  {0.5, 2.0, 4.0, -3.0},  {1.5, 1.0, 3.0, -2.0},
      {2.0, 2.0, 4.0, -0.7},  {0.25, 3.0, 6.0, -5.0}, {1.0, 2.0, 5.0, -9.0},
  };
  for (const auto& pt : pts) {
    const double series = gauss_2f1(pt.a, pt.b, pt.c, pt.z);
    const double integral = hyp2f1_euler(pt.a, pt.b, pt.c, pt.z);
    CHECK(series == doctest::Approx(integral).epsilon(1e-8));
  }
}

TEST_CASE("gauss_2f1 rejects unusable shape parameters") {
  CHECK_THROWS_AS((void)gauss_2f1(1.0, 1.0, 0.0, -1.0), std::domain_error);
  CHECK_THROWS_AS((void)gauss_2f1(1.0, 1.0, -2.0, -1.0), std::domain_error);
}

TEST_CASE("domain errors on invalid inputs") {
  CHECK_THROWS_AS((void)ln_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS((void)ln_gamma(-1.5), std::domain_error);
  CHECK_THROWS_AS((void)digamma(0.0), std::domain_error);
  CHECK_THROWS_AS((void)trigamma(-2.0), std::domain_error);
  CHECK_THROWS_AS((void)reg_inc_beta(2.0, 3.0, 1.5), std::domain_error);
  CHECK_THROWS_AS((void)reg_inc_beta(0.0, 3.0, 0.5), std::domain_error);
  CHECK_THROWS_AS((void)student_t_cdf(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)student_t_quantile(0.0, 5.0), std::domain_error);
  CHECK_THROWS_AS((void)student_t_quantile(1.0, 5.0), std::domain_error);
  CHECK_THROWS_AS((void)normal_quantile(0.0), std::domain_error);
}
