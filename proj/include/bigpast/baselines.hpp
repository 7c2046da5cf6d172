#pragma once

#include <cstdint>
#include <functional>

#include "bigpast/bigpast.hpp"
#include "bigpast/skewt.hpp"

namespace bigpast {

struct GaussianSummary {
  double mean = 0.0;
  double sd = 1.0;
  std::size_t n = 2;

  static GaussianSummary from(const Sample& data);
};

// Crawford t: (x* - mean) / (sd * sqrt((n+1)/n)) against Student t with
// n-1 degrees of freedom, expressed as a subject-space interval.
TestResult crawford_t(double subject, const GaussianSummary& summ, double beta,
                      Alternative alt);

// Plain z score (x* - mean)/sd against normal quantiles.
TestResult z_score(double subject, const GaussianSummary& summ, double beta,
                   Alternative alt);

// Crawford-Garthwaite Monte-Carlo test under normality: average the
// subject's tail probability over draws from the normal-inverse-chi-square
// posterior of (mean, variance) and compare to beta (two-sided doubles the
// smaller tail). The interval endpoints are the subject values where the
// averaged tail hits the threshold, found by root search.
TestResult crawford_garthwaite(double subject, const Sample& data, double beta,
                               Alternative alt, std::size_t draws = 10000,
                               std::uint64_t seed = 0);

// Rank-based empirical tail test with the (r + 0.5)/(n + 1) continuity
// correction, decided through the equivalent order-statistic interval.
TestResult anderson_darling_subject(double subject, const Sample& data,
                                    double beta, Alternative alt);

// Applies arcsinh to the subject and every control value, delegates, and
// maps the resulting interval back through sinh. A CG delegate is
// relabeled CGHA.
TestResult arcsinh_wrap(
    const std::function<TestResult(double, const Sample&)>& test,
    double subject, const Sample& data);

}  // namespace bigpast
