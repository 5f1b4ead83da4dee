#include "bernmix/degree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bernmix/basis.hpp"
#include "bernmix/errors.hpp"

namespace bernmix::degree {

namespace {

// ceiling with a small tolerance so ratios that are integers up to
// rounding (e.g. beta population moments) do not get bumped one up
int ceil_guarded(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

}  // namespace

int lower_bound_from_moments(double mean, double var) {
  if (!(var > 0.0)) throw std::domain_error("lower_bound: variance must be > 0");
  const double rho = mean * (1.0 - mean) / var;
  return std::max(ceil_guarded(rho - 3.0), 1);
}

int lower_bound_mb(std::span<const double> data, bool jackknife) {
  const std::size_t n = data.size();
  if (n < 2) throw std::domain_error("lower_bound_mb: need n >= 2");

  double s1 = 0.0, s2 = 0.0;
  for (double x : data) {
    s1 += x;
    s2 += x * x;
  }
  const double nn = static_cast<double>(n);
  const double xbar = s1 / nn;
  const double svar = (s2 - nn * xbar * xbar) / (nn - 1.0);
  if (!(svar > 0.0)) throw std::domain_error("lower_bound_mb: zero sample variance");
  const double rho = xbar * (1.0 - xbar) / svar;

  if (!jackknife) {
    return std::max(ceil_guarded(rho - 3.0), 1);
  }

  if (n < 3) throw std::domain_error("lower_bound_mb: jackknife needs n >= 3");
  double sum_loo = 0.0;
  for (double x : data) {
    const double mean_i = (s1 - x) / (nn - 1.0);
    const double var_i = (s2 - x * x - (nn - 1.0) * mean_i * mean_i) / (nn - 2.0);
    if (!(var_i > 0.0)) throw std::domain_error("lower_bound_mb: zero leave-one-out variance");
    sum_loo += mean_i * (1.0 - mean_i) / var_i;
  }
  const double rho_j = nn * rho - (nn - 1.0) / nn * sum_loo;
  return std::max(ceil_guarded(rho_j - 3.0), 1);
}

std::vector<ProfilePoint> profile_fits(std::span<const double> data, const DegreeGrid& grid,
                                       const fit::FitConfig& cfg) {
  if (grid.k < 2) throw std::domain_error("profile: grid needs k >= 2");
  if (grid.m0 < 0) throw std::domain_error("profile: m0 must be >= 0");

  std::vector<ProfilePoint> out;
  out.reserve(grid.k + 1);
  for (int i = 0; i <= grid.k; ++i) {
    const int m = grid.m0 + i;
    fit::FitResult res = [&] {
      if (i == 0) return fit::em_fit(data, m, cfg);
      // warm start: elevating the previous optimum starts the new degree
      // at exactly the previous log-likelihood (nested-model identity)
      try {
        return fit::em_fit_from(data, m, cfg, basis::elevate_degree(out.back().weights, 1));
      } catch (const infeasible_error&) {
        return fit::em_fit(data, m, cfg);
      }
    }();
    out.push_back({m, std::move(res.weights), res.loglik, res.n_iter, res.converged});
  }
  return out;
}

std::vector<double> profile_loglik(std::span<const double> data, const DegreeGrid& grid,
                                   const fit::FitConfig& cfg) {
  std::vector<double> lls;
  for (const auto& p : profile_fits(data, grid, cfg)) lls.push_back(p.loglik);
  return lls;
}

ChangePoint changepoint_select(std::span<const double> profile, double clamp) {
  const int k = static_cast<int>(profile.size()) - 1;
  if (k < 2) throw std::domain_error("changepoint_select: need k >= 2");

  // clamped increments and their prefix sums
  std::vector<double> s(k + 1, 0.0);
  for (int i = 1; i <= k; ++i) {
    s[i] = s[i - 1] + std::max(profile[i] - profile[i - 1], clamp);
  }
  const double total = s[k];
  const bool flat = (profile[k] - profile[0]) <= k * clamp;

  std::vector<double> r(k - 1);
  int tau_hat = 1;
  double best = -std::numeric_limits<double>::infinity();
  for (int tau = 1; tau <= k - 1; ++tau) {
    const double head = s[tau];
    const double tail = total - s[tau];
    const double val = k * std::log(total / k) - tau * std::log(head / tau) -
                       (k - tau) * std::log(tail / (k - tau));
    r[tau - 1] = val;
    if (val > best) {  // strict: ties keep the smallest tau
      best = val;
      tau_hat = tau;
    }
  }
  if (flat) tau_hat = 1;
  return {tau_hat, std::move(r), flat};
}

DegreeGrid default_grid(int m_b) {
  // The profile should bracket the optimal degree: start low, run past
  // twice the moment bound so the overfitting tail is long enough for
  // the change point to stand out.
  const int m0 = 2;
  const int hi = std::min(m0 + 100, std::max({2 * m_b, m_b + 10, m0 + 20}));
  return {m0, hi - m0};
}

DegreeSelection select_degree(std::span<const double> data, const fit::FitConfig& cfg,
                              std::optional<DegreeGrid> grid) {
  return select_and_fit(data, cfg, grid).selection;
}

SelectedFit select_and_fit(std::span<const double> data, const fit::FitConfig& cfg,
                           std::optional<DegreeGrid> grid) {
  if (data.size() < 2) throw std::domain_error("select_degree: need n >= 2");

  // jackknife needs three leave-one-out variances; fall back below that
  const int m_b = lower_bound_mb(data, /*jackknife=*/data.size() >= 3);
  const DegreeGrid g = grid.value_or(default_grid(m_b));

  std::vector<ProfilePoint> fits = profile_fits(data, g, cfg);
  std::vector<double> profile;
  profile.reserve(fits.size());
  for (const auto& p : fits) profile.push_back(p.loglik);

  ChangePoint cp = changepoint_select(profile);

  std::vector<double> increments(g.k);
  for (int i = 1; i <= g.k; ++i) increments[i - 1] = profile[i] - profile[i - 1];

  DegreeSelection sel{g,
                      std::move(profile),
                      std::move(increments),
                      std::move(cp.R),
                      cp.tau_hat,
                      g.m0 + cp.tau_hat,
                      cp.flat_profile};
  ProfilePoint best = std::move(fits[cp.tau_hat]);
  return {std::move(sel), m_b, std::move(best)};
}

}  // namespace bernmix::degree
