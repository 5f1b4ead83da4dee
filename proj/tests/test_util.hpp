#pragma once

// Shared test helpers: Gauss-Legendre quadrature (oracle-side integration)
// and deterministic random generators for property tests.

#include <cmath>
#include <functional>
#include <vector>

#include "bernmix/rng.hpp"

namespace testutil {

struct Quadrature {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline Quadrature gauss_legendre(int n) {
  Quadrature q;
  q.x.assign(n, 0.0);
  q.w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    q.x[i] = -x;
    q.x[n - 1 - i] = x;
    q.w[i] = q.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return q;
}

// Composite Gauss-Legendre integral of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 64, int order = 16) {
  const Quadrature q = gauss_legendre(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (int i = 0; i < order; ++i) total += q.w[i] * f(mid + half * q.x[i]) * half;
  }
  return total;
}

class Rand {
 public:
  explicit Rand(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return rng_.uniform01(); }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  int uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int v = lo + static_cast<int>(uniform() * span);
    return v > hi ? hi : v;
  }

  // random point of the k-simplex (k+1 entries, strictly positive)
  std::vector<double> simplex(int k) {
    std::vector<double> w(k + 1);
    double sum = 0.0;
    for (double& v : w) {
      v = -std::log(uniform());
      sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
  }

  // n points strictly inside (0, 1)
  std::vector<double> unit_data(int n) {
    std::vector<double> d(n);
    for (double& v : d) v = uniform();
    return d;
  }

  bernmix::Xoshiro256StarStar& engine() { return rng_; }

 private:
  bernmix::Xoshiro256StarStar rng_;
};

}  // namespace testutil
