#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bernmix/special.hpp"
#include "test_util.hpp"

using namespace bernmix;

namespace {

// exact binomial coefficient, safe for n <= 50
double binom_exact(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c *= static_cast<double>(n - i + 1) / i;
  return c;
}

// binomial-tail identity I_t(i+1, m-i+1) = sum_{j>i} C(m+1,j) t^j (1-t)^(m+1-j)
double inc_beta_tail_oracle(int m, int i, double t) {
  double acc = 0.0;
  for (int j = i + 1; j <= m + 1; ++j) {
    acc += binom_exact(m + 1, j) * std::pow(t, j) * std::pow(1.0 - t, m + 1 - j);
  }
  return acc;
}

}  // namespace

TEST_CASE("inc_beta basics") {
  CHECK(special::inc_beta(1.0, 1.0, 0.42) == doctest::Approx(0.42).epsilon(1e-14));
  CHECK(special::inc_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(special::inc_beta(2.0, 3.0, 1.0) == 1.0);
  CHECK_THROWS_AS(special::inc_beta(0.0, 1.0, 0.5), std::domain_error);
}

TEST_CASE("inc_beta matches the exact binomial tail for integer shapes") {
  testutil::Rand rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const int m = rng.uniform_int(0, 24);
    const int i = rng.uniform_int(0, m);
    const double t = rng.uniform(0.01, 0.99);
    const double got = special::inc_beta(i + 1.0, m - i + 1.0, t);
    const double want = inc_beta_tail_oracle(m, i, t);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("inc_beta reflection symmetry") {
  testutil::Rand rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    const double a = rng.uniform(0.2, 8.0);
    const double b = rng.uniform(0.2, 8.0);
    const double x = rng.uniform(0.0, 1.0);
    CHECK(special::inc_beta(a, b, x) ==
          doctest::Approx(1.0 - special::inc_beta(b, a, 1.0 - x)).epsilon(1e-12));
  }
}

TEST_CASE("inc_gamma_lower closed forms") {
  testutil::Rand rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const double x = rng.uniform(0.01, 20.0);
    CHECK(special::inc_gamma_lower(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-13));
    CHECK(special::inc_gamma_lower(0.5, x) ==
          doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
  }
  CHECK(special::inc_gamma_lower(3.0, 0.0) == 0.0);
  CHECK(special::inc_gamma_lower(3.0, 1e4) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normal cdf/pdf values") {
  CHECK(special::norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(special::norm_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-13));
  CHECK(special::norm_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-13));
  CHECK(special::norm_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
}

TEST_CASE("digamma and trigamma reference values") {
  const double euler = 0.5772156649015329;
  CHECK(special::digamma(1.0) == doctest::Approx(-euler).epsilon(1e-12));
  CHECK(special::digamma(2.0) == doctest::Approx(1.0 - euler).epsilon(1e-12));
  CHECK(special::digamma(0.5) == doctest::Approx(-euler - 2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(special::trigamma(1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
  CHECK(special::trigamma(0.5) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-12));

  // digamma is the log-derivative of lgamma
  for (double x : {0.7, 1.3, 2.9, 7.5, 23.0}) {
    const double h = 1e-6;
    const double fd = (std::lgamma(x + h) - std::lgamma(x - h)) / (2.0 * h);
    CHECK(special::digamma(x) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("log_binom exact small cases") {
  CHECK(std::exp(special::log_binom(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(std::exp(special::log_binom(52, 5)) == doctest::Approx(2598960.0).epsilon(1e-10));
  CHECK(special::log_binom(7, 0) == 0.0);
  CHECK(special::log_binom(7, 7) == 0.0);
  CHECK_THROWS_AS(special::log_binom(5, 6), std::domain_error);
}
