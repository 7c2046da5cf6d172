#pragma once

// Scalar special functions used throughout the library: log-gamma, digamma,
// trigamma, the regularized incomplete beta and its inverse, the Gauss
// hypergeometric function 2F1 for non-positive arguments, and the Student t
// and standard normal distribution kernels.
//
// All functions are pure and safe for unrestricted concurrent use.

namespace bigpast {

// log Gamma(x) for x > 0, relative error <= 1e-12.
double ln_gamma(double x);

// psi(x) = d/dx log Gamma(x) for x > 0, absolute error <= 1e-10.
double digamma(double x);

// psi'(x) for x > 0, absolute error <= 1e-10.
double trigamma(double x);

// log Beta(a, b) for a, b > 0.
double ln_beta(double a, double b);

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// and its inverse in x (round-trip within 1e-10).
double reg_inc_beta(double a, double b, double x);
double reg_inc_beta_inv(double a, double b, double p);

// Gauss hypergeometric 2F1(a, b; c; zarg) for zarg <= 0.
// Relative error <= 1e-9 down to zarg = -1e8. c must not be a non-positive
// integer. Throws NumericError if no evaluation branch converges.
double gauss_2f1(double a, double b, double c, double zarg);

// Standard Student t with df degrees of freedom (df > 0).
double student_t_pdf(double x, double df);
double student_t_log_pdf(double x, double df);
double student_t_cdf(double x, double df);
double student_t_log_cdf(double x, double df);
double student_t_quantile(double p, double df);

// Standard normal distribution.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_log_cdf(double x);  // stable for large |x|
double normal_quantile(double p);

}  // namespace bigpast
