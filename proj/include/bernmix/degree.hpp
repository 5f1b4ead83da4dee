#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bernmix/fit.hpp"

namespace bernmix::degree {

// Consecutive candidate degrees m0, m0+1, ..., m0+k.
struct DegreeGrid {
  int m0;
  int k;

  std::vector<int> degrees() const {
    std::vector<int> d(k + 1);
    for (int i = 0; i <= k; ++i) d[i] = m0 + i;
    return d;
  }
};

// Moment lower bound max{ceil(mu(1-mu)/var - 3), 1} evaluated on given
// unit-scale moments.
int lower_bound_from_moments(double mean, double var);

// Sample version of the bound on unit-scale data; with jackknife=true the
// ratio rho = xbar(1-xbar)/s^2 is replaced by the leave-one-out estimate
// rho_J = n rho - ((n-1)/n) sum_i rho_{-i}.
int lower_bound_mb(std::span<const double> data, bool jackknife);

// One warm-started fit per grid degree.
struct ProfilePoint {
  int m;
  MixtureWeights weights;
  double loglik;
  int n_iter;
  bool converged;
};

std::vector<ProfilePoint> profile_fits(std::span<const double> data, const DegreeGrid& grid,
                                       const fit::FitConfig& cfg);
std::vector<double> profile_loglik(std::span<const double> data, const DegreeGrid& grid,
                                   const fit::FitConfig& cfg);

struct ChangePoint {
  int tau_hat;            // in 1..k-1
  std::vector<double> R;  // R(1)..R(k-1)
  bool flat_profile;
};

// Two-segment exponential likelihood-ratio scan over the profile
// increments,
//   R(tau) = k log((l_k-l_0)/k) - tau log((l_tau-l_0)/tau)
//            - (k-tau) log((l_k-l_tau)/(k-tau)),
// increments clamped below at `clamp` before the logs.  Ties resolve to
// the smallest maximizer; a flat profile returns tau_hat = 1 flagged.
ChangePoint changepoint_select(std::span<const double> profile, double clamp = 1e-12);

struct DegreeSelection {
  DegreeGrid grid;
  std::vector<double> profile;     // k+1 profile log-likelihoods
  std::vector<double> increments;  // y_1..y_k
  std::vector<double> R;           // R(1)..R(k-1)
  int tau_hat;
  int m_hat;
  bool flat_profile;
};

// Grid used when the caller does not supply one; anchored below the
// moment lower bound so the change point can land at or under it.
DegreeGrid default_grid(int m_b);

DegreeSelection select_degree(std::span<const double> data, const fit::FitConfig& cfg,
                              std::optional<DegreeGrid> grid = std::nullopt);

// Selection plus the fitted weights at the chosen degree and the moment
// bound that anchored the default grid.
struct SelectedFit {
  DegreeSelection selection;
  int m_b;
  ProfilePoint best;
};

SelectedFit select_and_fit(std::span<const double> data, const fit::FitConfig& cfg,
                           std::optional<DegreeGrid> grid = std::nullopt);

}  // namespace bernmix::degree
