#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bernmix/degree.hpp"
#include "bernmix/rng.hpp"

namespace bernmix::simulate {

enum class DistKind {
  beta,
  trunc_gamma,
  trunc_normal,
  trunc_normal_mixture,
  nearly_normal,
  nearly_normal_mixture,
};

// One of the simulation-study test laws: closed-form pdf/cdf on the
// (possibly truncated) support [lo, hi], analytic moments, and a
// deterministic inverse-cdf sampler.
struct TestDistribution {
  DistKind kind;
  std::string name;
  double lo = 0.0;
  double hi = 1.0;

  double a = 0.0, b = 0.0;          // beta shapes
  double shape = 0.0, scale = 0.0;  // gamma
  double mu = 0.0, sigma = 0.0;     // normal
  double mix_w = 0.5;               // normal mixture
  double mu1 = 0.0, s1 = 1.0, mu2 = 0.0, s2 = 1.0;
  int k = 0;  // nearly-normal order

  double pdf(double x) const;   // truncated, renormalized
  double cdf(double x) const;
  double mean() const;          // mean of the truncated law
  double unit_mean() const;     // moments mapped onto [0,1]
  double unit_variance() const;
};

// The eight Table-1 presets: B(1,1), B(5,7), B(2.5,10), G(2,2), N(0,1),
// NM, NN(4), NNM.  Parameterized names such as B(3,4), G(a,b), N(m,s) or
// NN(k) are also accepted.
TestDistribution preset(const std::string& name);
const std::vector<std::string>& preset_names();

// Density / cdf of the mean of k independent uniforms (scaled Irwin-Hall).
double nearly_normal_pdf(int k, double t);
double nearly_normal_cdf(int k, double t);

double sample_one(const TestDistribution& d, Xoshiro256StarStar& rng);
std::vector<double> sample(const TestDistribution& d, int n, std::uint64_t seed);

double true_pdf(const TestDistribution& d, double x);
double true_cdf(const TestDistribution& d, double x);

// Parametric competitor fitted by maximum likelihood on the raw data
// (beta / gamma / normal / two-component normal mixture, with the normal
// (mixture) standing in for the nearly-normal families).
struct ParametricFit {
  std::function<double(double)> pdf_raw;  // untruncated fitted density
  std::function<double(double)> cdf_raw;
  double mean_raw;                        // parametric mean functional
  bool converged;
};
ParametricFit parametric_fit(const TestDistribution& d, std::span<const double> data);

struct StudyConfig {
  int grid_points = 200;
  int threads = 0;  // 0 -> hardware concurrency
};

// Monte Carlo aggregate over `runs` replications: moments of the selected
// degree, mean integrated squared errors (x100) of the Bernstein /
// parametric / kernel density estimates, mean-estimate squared errors
// (x100), and per-point MSE grids for both pdf and cdf estimators.
struct SimReport {
  std::string distribution;
  int n = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  int failed_runs = 0;

  double mean_mhat = 0.0, var_mhat = 0.0;
  double mise100_fB = 0.0, mise100_fP = 0.0, mise100_fK = 0.0;
  double mse100_muB = 0.0, mse100_muP = 0.0, mse100_xbar = 0.0;

  std::vector<double> grid_x;
  std::vector<double> mse_pdf_B, mse_pdf_P, mse_pdf_K;
  std::vector<double> mse_cdf_B, mse_cdf_P, mse_cdf_E;
};

// Runs are independent substreams (run r draws from seed ^ r) and are
// aggregated in run order, so the report is identical for any thread
// count.  Per-run failures are counted and excluded.
SimReport run_study(const TestDistribution& d, int n, int runs, std::uint64_t seed,
                    const StudyConfig& cfg = {});

}  // namespace bernmix::simulate
