#pragma once

#include <optional>
#include <set>
#include <span>

#include "bernmix/mixture_weights.hpp"

namespace bernmix::fit {

enum class InitScheme { uniform, binomial, empirical };

struct FitConfig {
  int max_iter = 500;
  double tol = 1e-7;  // relative log-likelihood change threshold
  InitScheme init = InitScheme::uniform;
  std::set<int> zero_mask;              // indices forced to weight 0
  std::optional<double> boundary_f0;    // known f(0); pins w[0] = f(0)/(m+1)
  std::optional<double> boundary_f1;    // known f(1); pins w[m] = f(1)/(m+1)
  bool symmetric = false;
};

struct FitResult {
  MixtureWeights weights;
  double loglik;
  int n_iter;
  bool converged;
};

struct InitResult {
  MixtureWeights weights;
  bool fallback_uniform;  // binomial scheme with xbar outside (0,1)
};

// Starting weights: uniform 1/(m+1), binomial b(m, xbar) masses, or the
// increments of the Vitale estimator over the grid i/(m+1).
InitResult init_weights(std::span<const double> data, int m, InitScheme scheme);

// Symmetrizing projection (w[i] + w[m-i]) / 2; applied after each EM step
// when the symmetry constraint is active.
MixtureWeights apply_symmetry(const MixtureWeights& w);

// Maximum Bernstein likelihood fit at fixed degree by the EM iteration
//   p_i <- (1/n) sum_j p_i beta_{mi}(x_j) / sum_k p_k beta_{mk}(x_j),
// with zero-index, pinned-boundary and symmetry constraints folded into
// the M-step so the likelihood stays monotone.  Data must be unit-scale.
FitResult em_fit(std::span<const double> data, int m, const FitConfig& cfg);

// Same, but starting from an explicit weight vector (used by the degree
// sweep's elevation warm start).  Constraints from cfg are re-applied to
// the start; throws infeasible_error if nothing admissible remains.
FitResult em_fit_from(std::span<const double> data, int m, const FitConfig& cfg,
                      const MixtureWeights& start);

}  // namespace bernmix::fit
