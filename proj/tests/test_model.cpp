#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bernmix/basis.hpp"
#include "bernmix/model.hpp"
#include "test_util.hpp"

using namespace bernmix;

namespace {

model::BernsteinModel make_model(MixtureWeights w, double a, double b) {
  return {std::move(w), {a, b}, 0.0, 1, true};
}

}  // namespace

TEST_CASE("pdf simple values and support behavior") {
  const auto uniform = make_model(MixtureWeights({1.0}), 0.0, 1.0);
  CHECK(model::pdf(uniform, 0.73) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(model::pdf(uniform, -0.1) == 0.0);
  CHECK(model::pdf(uniform, 1.1) == 0.0);

  const auto ramp = make_model(MixtureWeights({0.0, 1.0}), 0.0, 1.0);
  CHECK(model::pdf(ramp, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("pdf integrates to one on a shifted support") {
  testutil::Rand rng(31);
  const MixtureWeights w(rng.simplex(10));
  const auto m = make_model(w, 2.0, 5.0);
  const double integral =
      testutil::integrate([&](double x) { return model::pdf(m, x); }, 2.0, 5.0, 128);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("cdf endpoints, uniform value, and quadrature consistency") {
  testutil::Rand rng(32);
  const MixtureWeights w(rng.simplex(7));
  const auto m = make_model(w, -1.0, 3.0);
  CHECK(model::cdf(m, -1.0) == 0.0);
  CHECK(model::cdf(m, 3.0) == 1.0);

  const auto uniform = make_model(MixtureWeights({1.0}), 0.0, 1.0);
  CHECK(model::cdf(uniform, 0.42) == doctest::Approx(0.42).epsilon(1e-14));

  double prev = -1.0;
  for (int g = 0; g <= 100; ++g) {
    const double x = -1.0 + 4.0 * g / 100.0;
    const double c = model::cdf(m, x);
    CHECK(c >= prev - 1e-12);  // monotone
    prev = c;
    const double by_quad =
        testutil::integrate([&](double u) { return model::pdf(m, u); }, -1.0, x, 64);
    CHECK(c == doctest::Approx(by_quad).epsilon(1e-8));
  }
}

TEST_CASE("loglik simple and oracle cases") {
  const std::vector<double> pts = {0.1, 0.4, 0.9};
  const auto flat = model::loglik(MixtureWeights({1.0}), pts);
  CHECK(flat.feasible);
  CHECK(flat.value == doctest::Approx(0.0).epsilon(1e-15));

  const std::vector<double> half = {0.5};
  const auto ramp = model::loglik(MixtureWeights({0.0, 1.0}), half);
  CHECK(ramp.feasible);
  CHECK(ramp.value == doctest::Approx(0.0).epsilon(1e-14));

  // naive double-loop oracle
  testutil::Rand rng(33);
  for (int rep = 0; rep < 50; ++rep) {
    const int m = rng.uniform_int(0, 15);
    const MixtureWeights w(rng.simplex(m));
    const auto data = rng.unit_data(40);
    double want = 0.0;
    for (double x : data) {
      double f = 0.0;
      const auto row = basis::eval_basis(m, x);
      for (int i = 0; i <= m; ++i) f += w[i] * row.values[i];
      want += std::log(f);
    }
    const auto got = model::loglik(w, data);
    CHECK(got.feasible);
    CHECK(got.value == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("loglik flags zero density instead of clamping") {
  const std::vector<double> with_zero = {0.0, 0.5};
  const auto res = model::loglik(MixtureWeights({0.0, 1.0}), with_zero);
  CHECK_FALSE(res.feasible);
  CHECK(std::isinf(res.value));
  CHECK(res.value < 0.0);
}

TEST_CASE("loglik and mean are invariant under degree elevation") {
  testutil::Rand rng(34);
  for (int rep = 0; rep < 30; ++rep) {
    const int m = rng.uniform_int(0, 12);
    const int r = rng.uniform_int(1, 4);
    const MixtureWeights w(rng.simplex(m));
    const MixtureWeights up = basis::elevate_degree(w, r);
    const auto data = rng.unit_data(30);
    CHECK(model::loglik(w, data).value ==
          doctest::Approx(model::loglik(up, data).value).epsilon(1e-8));
    const auto low = make_model(w, 0.0, 1.0);
    const auto high = make_model(up, 0.0, 1.0);
    CHECK(model::mean_estimate(low) ==
          doctest::Approx(model::mean_estimate(high)).epsilon(1e-10));
  }
}

TEST_CASE("mean_estimate closed-form cases") {
  CHECK(model::mean_estimate(make_model(MixtureWeights({1.0}), 0.0, 1.0)) ==
        doctest::Approx(0.5).epsilon(1e-15));

  // one-hot at i=4, m=10 is beta(5, 7): mean 5/12
  std::vector<double> onehot(11, 0.0);
  onehot[4] = 1.0;
  CHECK(model::mean_estimate(make_model(MixtureWeights(onehot), 0.0, 1.0)) ==
        doctest::Approx(5.0 / 12.0).epsilon(1e-14));

  testutil::Rand rng(35);
  const MixtureWeights w(rng.simplex(9));
  const auto m = make_model(w, 1.5, 4.0);
  const double by_quad =
      testutil::integrate([&](double x) { return x * model::pdf(m, x); }, 1.5, 4.0, 128);
  CHECK(model::mean_estimate(m) == doctest::Approx(by_quad).epsilon(1e-8));
}

TEST_CASE("moment_estimate closed-form cases") {
  const auto uniform = make_model(MixtureWeights({1.0}), 0.0, 1.0);
  CHECK(model::moment_estimate(uniform, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  std::vector<double> onehot(8, 0.0);
  onehot[3] = 1.0;
  const auto hot = make_model(MixtureWeights(onehot), 0.0, 1.0);
  CHECK(model::moment_estimate(hot, 1) ==
        doctest::Approx(model::mean_estimate(hot)).epsilon(1e-14));

  testutil::Rand rng(36);
  const MixtureWeights w(rng.simplex(6));
  const auto m = make_model(w, 2.0, 5.0);
  for (int k : {1, 2, 3}) {
    const double by_quad = testutil::integrate(
        [&](double x) { return std::pow(x, k) * model::pdf(m, x); }, 2.0, 5.0, 128);
    CHECK(model::moment_estimate(m, k) == doctest::Approx(by_quad).epsilon(1e-8));
  }

  // support crossing zero exercises the signed binomial expansion
  const auto neg = make_model(MixtureWeights(rng.simplex(5)), -1.5, 2.5);
  for (int k : {1, 2, 3}) {
    const double by_quad = testutil::integrate(
        [&](double x) { return std::pow(x, k) * model::pdf(neg, x); }, -1.5, 2.5, 128);
    CHECK(model::moment_estimate(neg, k) == doctest::Approx(by_quad).epsilon(1e-8));
  }
  CHECK_THROWS_AS(model::moment_estimate(m, 0), std::domain_error);
}

TEST_CASE("MixtureWeights validation") {
  CHECK_THROWS_AS(MixtureWeights(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureWeights({0.5, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureWeights({0.0, 0.0}), std::invalid_argument);
  const MixtureWeights w({2.0, 6.0});  // stored normalized
  CHECK(w[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(0.75).epsilon(1e-15));
}
