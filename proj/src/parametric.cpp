#include "bernmix/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bernmix/special.hpp"

namespace bernmix::parametric {

namespace {

using special::digamma;
using special::trigamma;

void moments(std::span<const double> data, double& mean, double& var_mle) {
  const double n = static_cast<double>(data.size());
  mean = 0.0;
  for (double v : data) mean += v;
  mean /= n;
  var_mle = 0.0;
  for (double v : data) var_mle += (v - mean) * (v - mean);
  var_mle /= n;
}

}  // namespace

NormalParams fit_normal(std::span<const double> data) {
  if (data.size() < 2) throw std::domain_error("fit_normal: need n >= 2");
  double mean, var;
  moments(data, mean, var);
  if (!(var > 0.0)) throw std::domain_error("fit_normal: zero variance");
  return {mean, std::sqrt(var)};
}

BetaParams fit_beta(std::span<const double> data) {
  if (data.size() < 2) throw std::domain_error("fit_beta: need n >= 2");
  const double n = static_cast<double>(data.size());
  double mean, var;
  moments(data, mean, var);
  if (!(var > 0.0) || !(mean > 0.0 && mean < 1.0))
    throw std::domain_error("fit_beta: degenerate data");

  double mean_log = 0.0, mean_log1m = 0.0;
  for (double v : data) {
    if (!(v > 0.0 && v < 1.0)) throw std::domain_error("fit_beta: data must lie in (0,1)");
    mean_log += std::log(v);
    mean_log1m += std::log1p(-v);
  }
  mean_log /= n;
  mean_log1m /= n;

  // moment start
  const double common = mean * (1.0 - mean) / var - 1.0;
  double a = std::max(mean * common, 1e-3);
  double b = std::max((1.0 - mean) * common, 1e-3);

  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const double psi_ab = digamma(a + b);
    const double g1 = psi_ab - digamma(a) + mean_log;
    const double g2 = psi_ab - digamma(b) + mean_log1m;
    const double tri_ab = trigamma(a + b);
    const double j11 = tri_ab - trigamma(a);
    const double j22 = tri_ab - trigamma(b);
    const double det = j11 * j22 - tri_ab * tri_ab;
    if (det == 0.0) break;
    double da = (g1 * j22 - g2 * tri_ab) / det;
    double db = (g2 * j11 - g1 * tri_ab) / det;
    // keep the iterate in the positive quadrant
    double step = 1.0;
    while ((a - step * da <= 0.0 || b - step * db <= 0.0) && step > 1e-8) step *= 0.5;
    a -= step * da;
    b -= step * db;
    if (std::fabs(g1) < 1e-10 && std::fabs(g2) < 1e-10) {
      converged = true;
      break;
    }
  }
  return {a, b, converged};
}

GammaParams fit_gamma(std::span<const double> data) {
  if (data.size() < 2) throw std::domain_error("fit_gamma: need n >= 2");
  const double n = static_cast<double>(data.size());
  double mean = 0.0, mean_log = 0.0;
  for (double v : data) {
    if (!(v > 0.0)) throw std::domain_error("fit_gamma: data must be positive");
    mean += v;
    mean_log += std::log(v);
  }
  mean /= n;
  mean_log /= n;

  const double c = std::log(mean) - mean_log;  // > 0 by Jensen
  if (!(c > 0.0)) throw std::domain_error("fit_gamma: degenerate data");

  // classic closed-form start, then Newton on log(a) - psi(a) = c
  double a = (3.0 - c + std::sqrt((c - 3.0) * (c - 3.0) + 24.0 * c)) / (12.0 * c);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const double g = std::log(a) - digamma(a) - c;
    const double dg = 1.0 / a - trigamma(a);
    double step = g / dg;
    while (a - step <= 0.0 && std::fabs(step) > 1e-12) step *= 0.5;
    a -= step;
    if (std::fabs(g) < 1e-12) {
      converged = true;
      break;
    }
  }
  return {a, mean / a, converged};
}

NormalMixParams fit_normal_mixture(std::span<const double> data, int max_iter, double tol) {
  const std::size_t n = data.size();
  if (n < 4) throw std::domain_error("fit_normal_mixture: need n >= 4");

  // deterministic start: split at the median, use half-sample moments
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t half = n / 2;
  auto half_moments = [&](std::size_t lo, std::size_t hi, double& mu, double& sd) {
    mu = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mu += sorted[i];
    mu /= static_cast<double>(hi - lo);
    double ss = 0.0;
    for (std::size_t i = lo; i < hi; ++i) ss += (sorted[i] - mu) * (sorted[i] - mu);
    sd = std::sqrt(ss / static_cast<double>(hi - lo));
  };
  NormalMixParams p{0.5, 0.0, 1.0, 0.0, 1.0, false};
  half_moments(0, half, p.mu1, p.sigma1);
  half_moments(half, n, p.mu2, p.sigma2);

  double overall_mean, overall_var;
  moments(data, overall_mean, overall_var);
  const double sigma_floor = 1e-3 * std::sqrt(overall_var);
  p.sigma1 = std::max(p.sigma1, sigma_floor);
  p.sigma2 = std::max(p.sigma2, sigma_floor);

  std::vector<double> resp(n);
  double ll_prev = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    double ll = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d1 = p.w * special::norm_pdf((data[j] - p.mu1) / p.sigma1) / p.sigma1;
      const double d2 = (1.0 - p.w) * special::norm_pdf((data[j] - p.mu2) / p.sigma2) / p.sigma2;
      const double f = d1 + d2;
      if (!(f > 0.0)) throw std::domain_error("fit_normal_mixture: vanishing density");
      resp[j] = d1 / f;
      ll += std::log(f);
    }
    double r1 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      r1 += resp[j];
      m1 += resp[j] * data[j];
      m2 += (1.0 - resp[j]) * data[j];
    }
    const double r2 = static_cast<double>(n) - r1;
    if (r1 < 1e-10 || r2 < 1e-10) break;  // component collapsed
    p.w = r1 / static_cast<double>(n);
    p.mu1 = m1 / r1;
    p.mu2 = m2 / r2;
    double v1 = 0.0, v2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      v1 += resp[j] * (data[j] - p.mu1) * (data[j] - p.mu1);
      v2 += (1.0 - resp[j]) * (data[j] - p.mu2) * (data[j] - p.mu2);
    }
    p.sigma1 = std::max(std::sqrt(v1 / r1), sigma_floor);
    p.sigma2 = std::max(std::sqrt(v2 / r2), sigma_floor);

    if (it > 0 && (ll - ll_prev) / (std::fabs(ll_prev) + 1.0) < tol) {
      p.converged = true;
      break;
    }
    ll_prev = ll;
  }
  return p;
}

double normal_pdf(const NormalParams& p, double x) {
  return special::norm_pdf((x - p.mu) / p.sigma) / p.sigma;
}
double normal_cdf(const NormalParams& p, double x) {
  return special::norm_cdf((x - p.mu) / p.sigma);
}

double beta_pdf(const BetaParams& p, double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp((p.a - 1.0) * std::log(x) + (p.b - 1.0) * std::log1p(-x) -
                  special::log_beta(p.a, p.b));
}
double beta_cdf(const BetaParams& p, double x) { return special::inc_beta(p.a, p.b, x); }

double gamma_pdf(const GammaParams& p, double x) {
  if (x <= 0.0) return 0.0;
  return std::exp((p.shape - 1.0) * std::log(x) - x / p.scale - std::lgamma(p.shape) -
                  p.shape * std::log(p.scale));
}
double gamma_cdf(const GammaParams& p, double x) {
  if (x <= 0.0) return 0.0;
  return special::inc_gamma_lower(p.shape, x / p.scale);
}

double normal_mix_pdf(const NormalMixParams& p, double x) {
  return p.w * special::norm_pdf((x - p.mu1) / p.sigma1) / p.sigma1 +
         (1.0 - p.w) * special::norm_pdf((x - p.mu2) / p.sigma2) / p.sigma2;
}
double normal_mix_cdf(const NormalMixParams& p, double x) {
  return p.w * special::norm_cdf((x - p.mu1) / p.sigma1) +
         (1.0 - p.w) * special::norm_cdf((x - p.mu2) / p.sigma2);
}

}  // namespace bernmix::parametric
