#pragma once

#include <span>

#include "bernmix/mixture_weights.hpp"
#include "bernmix/transform.hpp"

namespace bernmix::model {

// A fitted Bernstein density: simplex weights on the unit interval plus
// the affine support map back to the raw scale, with fit diagnostics.
struct BernsteinModel {
  MixtureWeights weights;
  transform::SupportMap support;
  double loglik;
  int n_iter;
  bool converged;
};

// Mixture density on the unit scale: sum_i w_i beta_{mi}(t).
double density_unit(const MixtureWeights& w, double t);
// Mixture cdf on the unit scale: sum_i w_i B_{mi}(t).
double cdf_unit(const MixtureWeights& w, double t);

// Back-transformed pdf; zero outside [a, b].
double pdf(const BernsteinModel& m, double x);
// Back-transformed cdf; 0 left of a, 1 right of b.
double cdf(const BernsteinModel& m, double x);

struct LogLik {
  double value;    // -inf when the model puts zero density on a data point
  bool feasible;
};

// Bernstein log-likelihood sum_j log f_B(x_j, w) for unit-scale data.
// A zero-density data point makes the model infeasible; the sentinel is
// reported rather than clamped so boundary inference stays honest.
LogLik loglik(const MixtureWeights& w, std::span<const double> data);

// Plug-in mean of the fitted density on the raw scale:
// a + (b-a) * sum_i w_i (i+1)/(m+2).
double mean_estimate(const BernsteinModel& m);

// k-th raw moment on the raw scale via the beta(i+1, m-i+1) closed-form
// moments E[T^k] = prod_{s<k} (i+1+s)/(m+2+s).
double moment_estimate(const BernsteinModel& m, int k);

}  // namespace bernmix::model
