#pragma once

#include <span>

namespace bernmix::baselines {

// Empirical cdf F_E(x) = (1/n) #{x_i <= x}.
double ecdf(std::span<const double> data, double x);

// Vitale's Bernstein-smoothed cdf
//   F~_B(t) = sum_{i=0}^{m+1} F_E(i/(m+1)) b_{m+1,i}(t)
// for unit-scale data; monotone, endpoint-interpolating.
double vitale_cdf(std::span<const double> data, int m, double t);

struct KernelConfig {
  enum class Bandwidth { silverman, sheather_jones, fixed };
  Bandwidth rule = Bandwidth::silverman;
  double fixed_h = 0.0;
};

// Bandwidth implied by the config.  Silverman's rule is
// h = 0.9 min(s, IQR/1.34) n^{-1/5}; sheather_jones is not built and
// reports itself as unsupported.
double kde_bandwidth(std::span<const double> data, const KernelConfig& cfg);

// Gaussian kernel density (1/nh) sum_j phi((x - x_j)/h), direct summation.
double kde(std::span<const double> data, const KernelConfig& cfg, double x);
double kde_with_bandwidth(std::span<const double> data, double h, double x);

}  // namespace bernmix::baselines
