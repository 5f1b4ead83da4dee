#include "bernmix/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bernmix/basis.hpp"
#include "bernmix/special.hpp"

namespace bernmix::model {

double density_unit(const MixtureWeights& w, double t) {
  const int m = w.degree();
  std::vector<double> row(static_cast<std::size_t>(m) + 1);
  basis::eval_basis_into(m, t, row);
  double f = 0.0;
  for (int i = 0; i <= m; ++i) f += w[i] * row[i];
  return f;
}

double cdf_unit(const MixtureWeights& w, double t) {
  const int m = w.degree();
  double f = 0.0;
  for (int i = 0; i <= m; ++i) {
    f += w[i] * special::inc_beta(i + 1.0, m - i + 1.0, t);
  }
  return f;
}

double pdf(const BernsteinModel& m, double x) {
  if (x < m.support.a || x > m.support.b) return 0.0;
  return density_unit(m.weights, m.support.to_unit(x)) / m.support.width();
}

double cdf(const BernsteinModel& m, double x) {
  if (x <= m.support.a) return 0.0;
  if (x >= m.support.b) return 1.0;
  return cdf_unit(m.weights, m.support.to_unit(x));
}

LogLik loglik(const MixtureWeights& w, std::span<const double> data) {
  const int m = w.degree();
  std::vector<double> row(static_cast<std::size_t>(m) + 1);
  double ll = 0.0;
  for (double x : data) {
    basis::eval_basis_into(m, x, row);  // validates x in [0,1]
    double f = 0.0;
    for (int i = 0; i <= m; ++i) f += w[i] * row[i];
    if (!(f > 0.0)) {
      return {-std::numeric_limits<double>::infinity(), false};
    }
    ll += std::log(f);
  }
  return {ll, true};
}

double mean_estimate(const BernsteinModel& m) {
  const int deg = m.weights.degree();
  double mean_unit = 0.0;
  for (int i = 0; i <= deg; ++i) {
    mean_unit += m.weights[i] * (i + 1.0) / (deg + 2.0);
  }
  return m.support.from_unit(mean_unit);
}

double moment_estimate(const BernsteinModel& m, int k) {
  if (k < 1) throw std::domain_error("moment_estimate: k must be >= 1");
  const int deg = m.weights.degree();

  // unit-scale raw moments E[T^j], j = 0..k
  std::vector<double> unit_moment(k + 1, 0.0);
  unit_moment[0] = 1.0;
  for (int j = 1; j <= k; ++j) {
    double acc = 0.0;
    for (int i = 0; i <= deg; ++i) {
      double term = m.weights[i];
      for (int s = 0; s < j; ++s) term *= (i + 1.0 + s) / (deg + 2.0 + s);
      acc += term;
    }
    unit_moment[j] = acc;
  }

  // binomial expansion of E[(a + (b-a) T)^k]
  const double a = m.support.a;
  const double width = m.support.width();
  double result = 0.0;
  for (int j = 0; j <= k; ++j) {
    result += std::exp(special::log_binom(k, j)) * std::pow(a, k - j) *
              std::pow(width, j) * unit_moment[j];
  }
  return result;
}

}  // namespace bernmix::model
