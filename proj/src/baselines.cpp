#include "bernmix/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bernmix/basis.hpp"
#include "bernmix/special.hpp"

namespace bernmix::baselines {

double ecdf(std::span<const double> data, double x) {
  if (data.empty()) throw std::domain_error("ecdf: empty data");
  std::size_t count = 0;
  for (double v : data) {
    if (v <= x) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(data.size());
}

double vitale_cdf(std::span<const double> data, int m, double t) {
  if (data.empty()) throw std::domain_error("vitale_cdf: empty data");
  if (m < 0) throw std::domain_error("vitale_cdf: degree must be >= 0");
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("vitale_cdf: t outside [0,1]");

  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  // b_{m+1,i}(t) = beta_{m+1,i}(t) / (m+2)
  std::vector<double> row(static_cast<std::size_t>(m) + 2);
  basis::eval_basis_into(m + 1, t, row);

  double acc = 0.0;
  for (int i = 0; i <= m + 1; ++i) {
    const double grid = static_cast<double>(i) / (m + 1.0);
    const auto le = std::upper_bound(sorted.begin(), sorted.end(), grid) - sorted.begin();
    acc += (static_cast<double>(le) / n) * row[i] / (m + 2.0);
  }
  return acc;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  const double pos = p * (n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted.back();
  const double frac = pos - lo;
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

double kde_bandwidth(std::span<const double> data, const KernelConfig& cfg) {
  switch (cfg.rule) {
    case KernelConfig::Bandwidth::fixed:
      if (!(cfg.fixed_h > 0.0)) throw std::domain_error("kde: fixed bandwidth must be > 0");
      return cfg.fixed_h;
    case KernelConfig::Bandwidth::sheather_jones:
      throw std::runtime_error("kde: sheather_jones bandwidth is not built");
    case KernelConfig::Bandwidth::silverman:
      break;
  }
  if (data.size() < 2) throw std::domain_error("kde: need at least 2 points");

  const double n = static_cast<double>(data.size());
  double mean = 0.0;
  for (double v : data) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : data) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));

  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);

  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) throw std::domain_error("kde: zero-spread data");
  return 0.9 * spread * std::pow(n, -0.2);
}

double kde_with_bandwidth(std::span<const double> data, double h, double x) {
  if (data.empty()) throw std::domain_error("kde: empty data");
  if (!(h > 0.0)) throw std::domain_error("kde: bandwidth must be > 0");
  double acc = 0.0;
  for (double v : data) acc += special::norm_pdf((x - v) / h);
  return acc / (static_cast<double>(data.size()) * h);
}

double kde(std::span<const double> data, const KernelConfig& cfg, double x) {
  return kde_with_bandwidth(data, kde_bandwidth(data, cfg), x);
}

}  // namespace bernmix::baselines
