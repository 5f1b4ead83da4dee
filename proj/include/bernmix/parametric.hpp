#pragma once

#include <span>

namespace bernmix::parametric {

// Maximum-likelihood fits of the parametric competitor families used in
// the simulation study.  Each fit reports convergence; densities are
// evaluated un-truncated and renormalized by the caller.

struct NormalParams {
  double mu;
  double sigma;  // MLE scale, 1/n denominator
};
NormalParams fit_normal(std::span<const double> data);

struct BetaParams {
  double a;
  double b;
  bool converged;
};
// Moment-started Newton iteration on the beta score equations.
BetaParams fit_beta(std::span<const double> data);

struct GammaParams {
  double shape;
  double scale;
  bool converged;
};
// Newton on the profile score for the shape; scale = xbar / shape.
GammaParams fit_gamma(std::span<const double> data);

struct NormalMixParams {
  double w;  // weight of component 1
  double mu1, sigma1;
  double mu2, sigma2;
  bool converged;
};
// Two-component normal mixture EM with a deterministic median-split start.
NormalMixParams fit_normal_mixture(std::span<const double> data, int max_iter = 500,
                                   double tol = 1e-8);

double normal_pdf(const NormalParams& p, double x);
double normal_cdf(const NormalParams& p, double x);
double beta_pdf(const BetaParams& p, double x);
double beta_cdf(const BetaParams& p, double x);
double gamma_pdf(const GammaParams& p, double x);
double gamma_cdf(const GammaParams& p, double x);
double normal_mix_pdf(const NormalMixParams& p, double x);
double normal_mix_cdf(const NormalMixParams& p, double x);

}  // namespace bernmix::parametric
