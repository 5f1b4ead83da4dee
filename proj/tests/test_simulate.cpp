#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "bernmix/fit.hpp"
#include "bernmix/model.hpp"
#include "bernmix/parametric.hpp"
#include "bernmix/simulate.hpp"
#include "bernmix/special.hpp"
#include "test_util.hpp"

using namespace bernmix;

namespace {

// Independent Irwin-Hall oracle: density of the sum of k uniforms by
// recursive convolution, integrating piecewise between integer knots so
// Gauss-Legendre is exact on each polynomial piece.
double conv_density(int k, double s) {
  if (k == 1) return (s >= 0.0 && s <= 1.0) ? 1.0 : 0.0;
  if (s <= 0.0 || s >= k) return 0.0;
  const double lo = std::max(0.0, s - 1.0);
  const double hi = std::min(static_cast<double>(k - 1), s);
  double total = 0.0;
  double a = lo;
  while (a < hi - 1e-15) {
    const double b = std::min(std::floor(a + 1.0 + 1e-12), hi);
    total += testutil::integrate([&](double u) { return conv_density(k - 1, u); }, a, b, 1, 12);
    a = b;
  }
  return total;
}

}  // namespace

TEST_CASE("preset list is the eight Table-1 distributions") {
  const auto& names = simulate::preset_names();
  CHECK(names.size() == 8);
  for (const auto& n : names) CHECK_NOTHROW(simulate::preset(n));
  CHECK_THROWS_AS(simulate::preset("cauchy"), std::domain_error);
  CHECK_THROWS_AS(simulate::preset("B(0,1)"), std::domain_error);
  CHECK_THROWS_AS(simulate::preset("B(x,y)"), std::domain_error);
  CHECK_THROWS_AS(simulate::preset("NN(4"), std::domain_error);
}

TEST_CASE("gamma preset support matches the mean + 5 sd rule") {
  const auto g = simulate::preset("G(2,2)");
  CHECK(g.lo == 0.0);
  CHECK(g.hi == doctest::Approx(4.0 + 5.0 * std::sqrt(8.0)).epsilon(1e-14));
}

TEST_CASE("uniform sampling passes a KS smoke test") {
  const auto b11 = simulate::preset("B(1,1)");
  const int n = 10000;
  auto xs = simulate::sample(b11, n, 5);
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    ks = std::max(ks, std::fabs((i + 1.0) / n - xs[i]));
    ks = std::max(ks, std::fabs(xs[i] - static_cast<double>(i) / n));
  }
  CHECK(ks < 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("nearly-normal sample mean and bounds") {
  const auto nn4 = simulate::preset("NN(4)");
  const int n = 20000;
  const auto xs = simulate::sample(nn4, n, 6);
  double mean = 0.0;
  for (double v : xs) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    mean += v;
  }
  mean /= n;
  // Var(mean of 4 uniforms) = 1/48
  CHECK(std::fabs(mean - 0.5) < 3.0 * std::sqrt(1.0 / 48.0 / n));
}

TEST_CASE("truncated samplers respect their bounds exactly") {
  for (const char* name : {"N(0,1)", "G(2,2)", "NM"}) {
    const auto d = simulate::preset(name);
    const auto xs = simulate::sample(d, 2000, 7);
    for (double v : xs) {
      CHECK(v >= d.lo);
      CHECK(v <= d.hi);
    }
  }
}

TEST_CASE("sampling is reproducible given the seed") {
  const auto d = simulate::preset("B(5,7)");
  const auto a = simulate::sample(d, 100, 123);
  const auto b = simulate::sample(d, 100, 123);
  CHECK(a == b);
  const auto c = simulate::sample(d, 100, 124);
  CHECK(a != c);
}

TEST_CASE("Irwin-Hall density closed form") {
  // psi_4(1/2) = 4 * f_IH4(2) = 4 * (2/3)
  CHECK(simulate::nearly_normal_pdf(4, 0.5) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

  // convolution-quadrature oracle at assorted points
  for (double t : {0.1, 0.26, 0.4, 0.55, 0.73, 0.9}) {
    const double want = 4.0 * conv_density(4, 4.0 * t);
    CHECK(simulate::nearly_normal_pdf(4, t) == doctest::Approx(want).epsilon(1e-9));
  }
  for (double t : {0.2, 0.5, 0.81}) {
    const double want = 3.0 * conv_density(3, 3.0 * t);
    CHECK(simulate::nearly_normal_pdf(3, t) == doctest::Approx(want).epsilon(1e-9));
  }

  CHECK(simulate::nearly_normal_cdf(4, 0.0) == 0.0);
  CHECK(simulate::nearly_normal_cdf(4, 1.0) == 1.0);
  CHECK(simulate::nearly_normal_cdf(4, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(simulate::nearly_normal_pdf(25, 0.5), std::domain_error);
}

TEST_CASE("every preset pdf integrates to one and matches its cdf") {
  for (const auto& name : simulate::preset_names()) {
    const auto d = simulate::preset(name);
    const double mass = testutil::integrate([&](double x) { return d.pdf(x); }, d.lo, d.hi, 256);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));

    for (double q : {0.25, 0.5, 0.75}) {
      const double x = d.lo + q * (d.hi - d.lo);
      const double by_quad =
          testutil::integrate([&](double u) { return d.pdf(u); }, d.lo, x, 256);
      CHECK(d.cdf(x) == doctest::Approx(by_quad).epsilon(1e-6));
    }
    CHECK(d.cdf(d.lo) == 0.0);
    CHECK(d.cdf(d.hi) == 1.0);
  }
}

TEST_CASE("analytic moments agree with quadrature for every preset") {
  for (const auto& name : simulate::preset_names()) {
    const auto d = simulate::preset(name);
    const double mean_quad =
        testutil::integrate([&](double x) { return x * d.pdf(x); }, d.lo, d.hi, 256);
    CHECK(d.mean() == doctest::Approx(mean_quad).epsilon(1e-7));

    const double m2_quad =
        testutil::integrate([&](double x) { return x * x * d.pdf(x); }, d.lo, d.hi, 256);
    const double var = m2_quad - mean_quad * mean_quad;
    const double w = d.hi - d.lo;
    CHECK(d.unit_mean() == doctest::Approx((mean_quad - d.lo) / w).epsilon(1e-7));
    CHECK(d.unit_variance() == doctest::Approx(var / (w * w)).epsilon(1e-6));
  }
}

TEST_CASE("normal fit is the closed form") {
  const std::vector<double> data = {1.0, 2.0, 3.0, 6.0};
  const auto p = parametric::fit_normal(data);
  CHECK(p.mu == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(p.sigma == doctest::Approx(std::sqrt(3.5)).epsilon(1e-14));
}

TEST_CASE("beta fit recovers the truth on a large sample") {
  const auto b57 = simulate::preset("B(5,7)");
  const auto data = simulate::sample(b57, 100000, 99);
  const auto p = parametric::fit_beta(data);
  CHECK(p.converged);
  CHECK(std::fabs(p.a - 5.0) / 5.0 < 0.05);
  CHECK(std::fabs(p.b - 7.0) / 7.0 < 0.05);
}

TEST_CASE("gamma fit satisfies the score equations") {
  const auto g22 = simulate::preset("G(2,2)");
  const auto data = simulate::sample(g22, 5000, 55);
  const auto p = parametric::fit_gamma(data);
  CHECK(p.converged);
  double mean = 0.0, mean_log = 0.0;
  for (double v : data) {
    mean += v;
    mean_log += std::log(v);
  }
  mean /= data.size();
  mean_log /= data.size();
  // score residuals
  CHECK(std::fabs(std::log(p.shape) - special::digamma(p.shape) -
                  (std::log(mean) - mean_log)) < 1e-8);
  CHECK(p.scale == doctest::Approx(mean / p.shape).epsilon(1e-12));
}

TEST_CASE("normal mixture EM separates well-separated components") {
  const auto nm = simulate::preset("NM");
  const auto data = simulate::sample(nm, 3000, 77);
  const auto p = parametric::fit_normal_mixture(data);
  CHECK(p.converged);
  const double lo_mu = std::min(p.mu1, p.mu2);
  const double hi_mu = std::max(p.mu1, p.mu2);
  CHECK(lo_mu == doctest::Approx(-1.0).epsilon(0.15));
  CHECK(hi_mu == doctest::Approx(1.0).epsilon(0.15));
  CHECK(p.w == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("parametric mean functional equals the sample mean where it should") {
  const auto n01 = simulate::preset("N(0,1)");
  const auto data = simulate::sample(n01, 400, 66);
  double xbar = 0.0;
  for (double v : data) xbar += v;
  xbar /= data.size();
  const auto pf = simulate::parametric_fit(n01, data);
  CHECK(pf.mean_raw == doctest::Approx(xbar).epsilon(1e-12));
}

TEST_CASE("run_study is deterministic and thread-count invariant") {
  const auto d = simulate::preset("B(5,7)");
  simulate::StudyConfig one;
  one.threads = 1;
  one.grid_points = 50;
  simulate::StudyConfig two;
  two.threads = 2;
  two.grid_points = 50;
  const auto a = simulate::run_study(d, 40, 4, 11, one);
  const auto b = simulate::run_study(d, 40, 4, 11, two);
  CHECK(a.mean_mhat == b.mean_mhat);
  CHECK(a.mise100_fB == b.mise100_fB);
  CHECK(a.mse100_muB == b.mse100_muB);
  CHECK(a.mse_pdf_B == b.mse_pdf_B);  // bitwise
  CHECK(a.failed_runs == 0);
  CHECK(a.mean_mhat >= 3.0);
}

TEST_CASE("midpoint-rule ISE agrees with quadrature within two percent") {
  const auto d = simulate::preset("B(5,7)");
  const auto data = simulate::sample(d, 200, 17);
  const auto res = fit::em_fit(data, 10, {});
  const model::BernsteinModel bm{res.weights, {0.0, 1.0}, res.loglik, res.n_iter,
                                 res.converged};

  const auto sq_err = [&](double x) {
    const double diff = model::pdf(bm, x) - d.pdf(x);
    return diff * diff;
  };
  double midpoint = 0.0;
  const int cells = 200;
  for (int g = 0; g < cells; ++g) midpoint += sq_err((g + 0.5) / cells) / cells;
  const double quad = testutil::integrate(sq_err, 0.0, 1.0, 256);
  CHECK(midpoint == doctest::Approx(quad).epsilon(0.02));
}

TEST_CASE("selected degree never undercuts the grid start likelihood") {
  const auto d = simulate::preset("NN(4)");
  simulate::StudyConfig cfg;
  cfg.grid_points = 50;
  const auto rep = simulate::run_study(d, 60, 3, 3, cfg);
  CHECK(rep.failed_runs == 0);
  CHECK(rep.mean_mhat >= 3.0);  // grid starts at 2, tau >= 1
}
