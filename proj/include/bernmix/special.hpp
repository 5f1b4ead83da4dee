#pragma once

// Scalar special functions used across the library: log-binomials via
// lgamma, regularized incomplete beta/gamma, the normal cdf, and the
// digamma/trigamma pair needed by the parametric likelihood fits.

namespace bernmix::special {

// log C(n, k) for 0 <= k <= n, computed through lgamma.
double log_binom(int n, int k);

// log Beta(a, b), a, b > 0.
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
// Returns 0 for x <= 0 and 1 for x >= 1.
double inc_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a, x) (series for x < a+1,
// continued fraction otherwise).
double inc_gamma_lower(double a, double x);

double norm_pdf(double x);
double norm_cdf(double x);

double digamma(double x);
double trigamma(double x);

}  // namespace bernmix::special
