#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "bigpast/errors.hpp"
#include "bigpast/priors.hpp"
#include "bigpast/skewt.hpp"
#include "bigpast/special_fn.hpp"

using namespace bigpast;

namespace {

SkewTParams params(double a, double nu, double xi = 0.0, double omega = 1.0) {
  return SkewTParams{a, nu, xi, omega};
}

// Monte Carlo estimate of E[g(Z)] under the standardized skew t.
double mc_expect(double alpha, double nu,
                 const std::function<double(double)>& g, std::size_t n,
                 std::uint64_t seed) {
  const SkewTParams p = params(alpha, nu);
  const Sample draws = sample(p, n, seed);
  double acc = 0.0;
  for (double z : draws) acc += g(z);
  return acc / n;
}

}  // namespace

TEST_CASE("sigma_nu reference values") {
  CHECK(sigma_nu(1.0) == doctest::Approx(1.62021189).epsilon(1e-9));
  CHECK(sigma_nu(2.0) == doctest::Approx(1.6257863215232842).epsilon(1e-12));
  CHECK(sigma_nu(10.0) == doctest::Approx(1.5826144147478252).epsilon(1e-12));
  CHECK(sigma_nu(100.0) == doctest::Approx(1.5556859096159952).epsilon(1e-12));
  CHECK(sigma_nu(2399.99) ==
        doctest::Approx(1.5513023189393362).epsilon(1e-12));
}

TEST_CASE("sigma_nu clamps below one and flattens above 2400") {
  bool clamped = false;
  const double at_one = sigma_nu(1.0);
  CHECK(sigma_nu(0.3, &clamped) == doctest::Approx(at_one));
  CHECK(clamped);
  clamped = false;
  (void)sigma_nu(5.0, &clamped);
  CHECK_FALSE(clamped);
  CHECK(sigma_nu(2400.0) == doctest::Approx(1.5536).epsilon(1e-6));
  CHECK(sigma_nu(1e7) == doctest::Approx(1.5536).epsilon(1e-6));
  // Continuity at the flattening point stays within the fit's own step.
  CHECK(std::fabs(sigma_nu(2399.999) - sigma_nu(2400.001)) < 3e-3);
}

TEST_CASE("fisher entries reference values") {
  CHECK(fisher_i_alpha_alpha(2.0, 3.0) ==
        doctest::Approx(0.067048475288004589).epsilon(1e-10));
  CHECK(fisher_i_alpha_alpha(10.0, 5.0) ==
        doctest::Approx(0.00074703365766597195).epsilon(1e-10));
  CHECK(fisher_i_alpha_alpha(0.5, 0.7) ==
        doctest::Approx(0.36738580047594149).epsilon(1e-10));
  CHECK(fisher_i_alpha_alpha(1e3, 5.0) ==
        doctest::Approx(7.5661216459320267e-10).epsilon(1e-8));
  CHECK(fisher_i_alpha_alpha(1e4, 5.0) ==
        doctest::Approx(7.5661311731450936e-13).epsilon(1e-8));
  CHECK(fisher_i_alpha_alpha(1e-6, 5.0) ==
        doctest::Approx(0.56833452757556246).epsilon(1e-10));

  CHECK(fisher_i_nu_nu(2.0, 3.0, 1.0) ==
        doctest::Approx(0.021497315714263387).epsilon(1e-10));
  CHECK(fisher_i_nu_nu(0.0, 0.7, 1.0) ==
        doctest::Approx(1.1388944230047069).epsilon(1e-10));
  CHECK(fisher_i_nu_nu(0.0, 2.0, 1.0) ==
        doctest::Approx(0.060866299909220128).epsilon(1e-10));
  CHECK(fisher_i_nu_nu(0.0, 5.0, 1.0) ==
        doctest::Approx(0.0030225889796687763).epsilon(1e-10));
  CHECK(fisher_i_nu_nu(0.0, 50.0, 1.0) ==
        doctest::Approx(5.2078445358520785e-7).epsilon(1e-9));
  CHECK(fisher_i_nu_nu(2.0, 3.0, 0.0) ==
        doctest::Approx(0.041149473143667056).epsilon(1e-10));

  CHECK(fisher_i_alpha_nu(2.0, 3.0) ==
        doctest::Approx(-0.016995218787316239).epsilon(1e-10));
}

TEST_CASE("alpha-zero nu-nu entry equals the student t fisher information") {
  // At alpha = 0 the closed form must collapse to the exact Student-t
  // information for nu, computable from trigamma functions.
  for (double nu : {0.7, 2.0, 5.0, 50.0}) {
    const double a = 0.5 * nu;
    const double exact =
        0.25 * (trigamma(a) - trigamma(a + 0.5)) -
        (nu + 5.0) / (2.0 * nu * (nu + 1.0) * (nu + 3.0));
    CHECK(fisher_i_nu_nu(0.0, nu, 1.0) ==
          doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("fisher block symmetry in alpha") {
  for (double a : {0.5, 2.0, 30.0})
    for (double nu : {1.2, 4.0, 9.0}) {
      CHECK(fisher_i_alpha_alpha(-a, nu) ==
            doctest::Approx(fisher_i_alpha_alpha(a, nu)).epsilon(1e-11));
      CHECK(fisher_i_alpha_nu(-a, nu) ==
            doctest::Approx(-fisher_i_alpha_nu(a, nu)).epsilon(1e-11));
      CHECK(fisher_i_nu_nu(-a, nu, 1.0) ==
            doctest::Approx(fisher_i_nu_nu(a, nu, 1.0)).epsilon(1e-11));
    }
}

TEST_CASE("fisher determinant nonnegative on the working grid") {
  for (double a : {-100.0, -10.0, -2.0, -0.5, 0.0, 0.5, 2.0, 10.0, 100.0})
    for (double nu : {0.6, 1.0, 2.0, 5.0, 20.0, 100.0}) {
      const FisherBlock blk = fisher_block(a, nu, 1.0);
      CHECK(blk.det() >= -1e-18);
    }
}

TEST_CASE("fisher alpha-alpha against monte carlo") {
  // I_aa is the expectation of the squared score in alpha; the closed form
  // and a direct simulation must agree within Monte Carlo error. The score
  // is h = t(w|nu+1)/T(w|nu+1) * z*sqrt((nu+1)/(nu+z^2)) at alpha.
  const double alpha = 2.0, nu = 3.0;
  auto score_sq = [&](double z) {
    const double w = alpha * z * std::sqrt((nu + 1.0) / (nu + z * z));
    const double h = student_t_pdf(w, nu + 1.0) /
                     std::max(student_t_cdf(w, nu + 1.0), 1e-300);
    const double dz = z * std::sqrt((nu + 1.0) / (nu + z * z));
    return h * h * dz * dz;
  };
  const double mc = mc_expect(alpha, nu, score_sq, 400000, 99);
  CHECK(fisher_i_alpha_alpha(alpha, nu) == doctest::Approx(mc).epsilon(0.02));
}

TEST_CASE("jeffreys prior reference values and tail slope") {
  PriorKind j1 = PriorKind::jeffreys(1.0);
  const SkewTParams p23 = params(2.0, 3.0);
  CHECK(std::exp(log_prior(p23, j1)) ==
        doctest::Approx(0.03394885535327332).epsilon(1e-9));
  const SkewTParams p_1e3 = params(1e3, 5.0);
  const SkewTParams p_1e4 = params(1e4, 5.0);
  const double l3 = log_prior(p_1e3, j1);
  const double l4 = log_prior(p_1e4, j1);
  CHECK(l3 == doctest::Approx(-13.401905931352221).epsilon(1e-9));
  CHECK(l4 == doctest::Approx(-16.855782941265183).epsilon(1e-9));
  // log pi(alpha) ~ -(3/2) log alpha in the tail.
  const double slope = (l4 - l3) / std::log(10.0);
  CHECK(slope == doctest::Approx(-1.5).epsilon(0.067));
}

TEST_CASE("jeffreys prior scale invariances") {
  // pi(alpha, nu, xi, omega) = pi_J(alpha, nu) / omega: location has no
  // effect and scale enters as 1/omega.
  PriorKind j1 = PriorKind::jeffreys(1.0);
  const SkewTParams base = params(2.0, 3.0, 0.0, 1.0);
  const SkewTParams moved = params(2.0, 3.0, 17.0, 1.0);
  const SkewTParams scaled = params(2.0, 3.0, 0.0, 4.0);
  CHECK(log_prior(moved, j1) == doctest::Approx(log_prior(base, j1)));
  CHECK(log_prior(scaled, j1) ==
        doctest::Approx(log_prior(base, j1) - std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("fonseca reference prior for nu") {
  CHECK(fonseca_pi_nu(1.0) ==
        doctest::Approx(0.56786180838661204).epsilon(1e-9));
  CHECK(fonseca_pi_nu(5.0) ==
        doctest::Approx(0.063908138972667033).epsilon(1e-9));
  // Strictly decreasing and integrable-looking tail.
  CHECK(fonseca_pi_nu(2.0) > fonseca_pi_nu(4.0));
  CHECK(fonseca_pi_nu(50.0) < fonseca_pi_nu(5.0));
}

TEST_CASE("branco and dette priors") {
  // Branco: pi(alpha) proportional to (1 + alpha^2/(nu+...)) form evaluated
  // through the implementation; here we pin the structural properties the
  // families must satisfy rather than closed-form values: symmetry in
  // alpha and the Dette tail exponent of -2 seen as a log-log slope.
  PriorKind b = PriorKind::branco();
  PriorKind d = PriorKind::dette();
  const SkewTParams plus = params(3.0, 4.0);
  const SkewTParams minus = params(-3.0, 4.0);
  CHECK(log_prior(plus, b) == doctest::Approx(log_prior(minus, b)));
  CHECK(log_prior(plus, d) == doctest::Approx(log_prior(minus, d)));

  const SkewTParams a1 = params(1e3, 4.0);
  const SkewTParams a2 = params(1e4, 4.0);
  const double dette_slope =
      (log_prior(a2, d) - log_prior(a1, d)) / std::log(10.0);
  CHECK(dette_slope == doctest::Approx(-2.0).epsilon(0.01));
}

TEST_CASE("uniform prior support box") {
  PriorKind u = PriorKind::uniform();
  const SkewTParams inside = params(3.0, 4.0, 1.0, 2.0);
  CHECK(std::isfinite(log_prior(inside, u)));
  const SkewTParams bad_nu = params(3.0, 1e9, 1.0, 2.0);
  CHECK(log_prior(bad_nu, u) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("log posterior composes likelihood and prior") {
  const SkewTParams truth = params(-2.0, 5.0, 1.0, 2.0);
  const Sample data = sample(truth, 60, 3);
  PriorKind j1 = PriorKind::jeffreys(1.0);
  const double lp = log_posterior(data, truth, j1);
  CHECK(lp == doctest::Approx(log_likelihood(data, truth) +
                              log_prior(truth, j1)).epsilon(1e-12));
}

TEST_CASE("map fit beats mle on alpha at small n under skew truth") {
  // The Jeffreys penalty pulls the runaway alpha estimates back toward
  // zero; over a handful of seeds the MAP alpha error should not exceed
  // the MLE error on average.
  const SkewTParams truth = params(-5.0, 5.0, 0.0, 1.0);
  PriorKind j1 = PriorKind::jeffreys(1.0);
  double map_err = 0.0, mle_err = 0.0;
  int used = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Sample data = sample(truth, 50, 300 + seed);
    try {
      const SkewTParams m = fit_map(data, j1);
      const FitResult f = fit_mle(data);
      map_err += std::min(std::fabs(m.alpha - truth.alpha), 1e3);
      mle_err += std::min(std::fabs(f.params.alpha - truth.alpha), 1e3);
      ++used;
    } catch (const NumericError&) {
      continue;
    }
  }
  REQUIRE(used >= 7);
  CHECK(map_err <= mle_err + 1e-9);
}

TEST_CASE("map fit respects an explicit init") {
  const SkewTParams truth = params(2.0, 6.0, -1.0, 1.5);
  const Sample data = sample(truth, 200, 21);
  PriorKind j1 = PriorKind::jeffreys(1.0);
  const SkewTParams from_truth = fit_map(data, j1, truth);
  const double lp = log_posterior(data, from_truth, j1);
  CHECK(lp >= log_posterior(data, truth, j1) - 1e-9);
}
