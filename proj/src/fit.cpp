#include "bernmix/fit.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bernmix/baselines.hpp"
#include "bernmix/basis.hpp"
#include "bernmix/errors.hpp"
#include "bernmix/special.hpp"

namespace bernmix::fit {

namespace {

struct Constraints {
  std::vector<bool> zero;   // forced-zero indices
  double pin0 = -1.0;       // pinned value of w[0], <0 when unpinned
  double pin1 = -1.0;       // pinned value of w[m]
  double pinned_mass = 0.0;
};

Constraints build_constraints(int m, const FitConfig& cfg) {
  Constraints c;
  c.zero.assign(static_cast<std::size_t>(m) + 1, false);
  for (int idx : cfg.zero_mask) {
    if (idx < 0 || idx > m) throw std::domain_error("em_fit: zero_mask index out of range");
    c.zero[idx] = true;
  }
  if (cfg.boundary_f0) {
    const double v = *cfg.boundary_f0;
    if (v < 0.0) throw std::domain_error("em_fit: f(0) must be >= 0");
    if (v == 0.0) {
      c.zero[0] = true;
    } else {
      c.pin0 = v / (m + 1.0);
    }
  }
  if (cfg.boundary_f1) {
    const double v = *cfg.boundary_f1;
    if (v < 0.0) throw std::domain_error("em_fit: f(1) must be >= 0");
    if (v == 0.0) {
      c.zero[m] = true;
    } else {
      c.pin1 = v / (m + 1.0);
    }
  }
  if (m == 0 && c.pin0 >= 0.0 && c.pin1 >= 0.0 && c.pin0 != c.pin1)
    throw std::domain_error("em_fit: conflicting boundary constraints at degree 0");
  if (m == 0 && (c.pin0 >= 0.0 || c.pin1 >= 0.0)) {
    // degree 0 has a single weight; a boundary pin must equal 1
    const double pin = c.pin0 >= 0.0 ? c.pin0 : c.pin1;
    if (std::fabs(pin - 1.0) > 1e-12)
      throw std::domain_error("em_fit: degree-0 boundary constraint must give f = 1");
    c.pin0 = c.pin1 = -1.0;
  }
  if (cfg.symmetric) {
    const bool has0 = c.pin0 >= 0.0, has1 = c.pin1 >= 0.0;
    if (has0 != has1 || (has0 && c.pin0 != c.pin1))
      throw std::domain_error("em_fit: symmetric fit needs matching boundary constraints");
    for (int i = 0; i <= m; ++i) {
      if (c.zero[i] != c.zero[m - i])
        throw std::domain_error("em_fit: symmetric fit needs a symmetric zero mask");
    }
  }
  if ((c.pin0 >= 0.0 && c.zero[0]) || (c.pin1 >= 0.0 && c.zero[m]))
    throw std::domain_error("em_fit: index both pinned and masked to zero");

  c.pinned_mass = (c.pin0 >= 0.0 ? c.pin0 : 0.0) + (m > 0 && c.pin1 >= 0.0 ? c.pin1 : 0.0);
  if (c.pinned_mass > 1.0 + 1e-12)
    throw std::domain_error("em_fit: boundary constraints exceed total mass");

  bool any_free = false;
  for (int i = 0; i <= m; ++i) {
    const bool pinned = (i == 0 && c.pin0 >= 0.0) || (i == m && c.pin1 >= 0.0);
    if (!c.zero[i] && !pinned) any_free = true;
  }
  if (!any_free && c.pinned_mass < 1.0 - 1e-12)
    throw infeasible_error("em_fit: constraints leave no admissible weights");
  return c;
}

// Force a weight vector onto the constraint set: zeros zeroed, pins set,
// free coordinates rescaled to the remaining mass.
void project_constraints(std::vector<double>& w, int m, const Constraints& c) {
  for (int i = 0; i <= m; ++i) {
    if (c.zero[i]) w[i] = 0.0;
  }
  double free_mass = 0.0;
  for (int i = 0; i <= m; ++i) {
    const bool pinned = (i == 0 && c.pin0 >= 0.0) || (i == m && c.pin1 >= 0.0);
    if (!pinned && !c.zero[i]) free_mass += w[i];
  }
  const double target = 1.0 - c.pinned_mass;
  if (free_mass > 0.0) {
    const double scale = target / free_mass;
    for (int i = 0; i <= m; ++i) {
      const bool pinned = (i == 0 && c.pin0 >= 0.0) || (i == m && c.pin1 >= 0.0);
      if (!pinned && !c.zero[i]) w[i] *= scale;
    }
  } else if (target > 1e-12) {
    throw infeasible_error("em_fit: start has no mass on admissible weights");
  }
  if (c.pin0 >= 0.0) w[0] = c.pin0;
  if (c.pin1 >= 0.0) w[m] = c.pin1;
}

void symmetrize(std::vector<double>& w) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double avg = 0.5 * (w[i] + w[n - 1 - i]);
    w[i] = avg;
    w[n - 1 - i] = avg;
  }
}

FitResult em_core(std::span<const double> data, int m, const FitConfig& cfg,
                  std::vector<double> w, const Constraints& cons) {
  const std::size_t n = data.size();
  const std::size_t width = static_cast<std::size_t>(m) + 1;

  // basis matrix, row j = beta_{m.}(x_j); fixed across iterations
  std::vector<double> B(n * width);
  for (std::size_t j = 0; j < n; ++j) {
    basis::eval_basis_into(m, data[j], {B.data() + j * width, width});
  }

  std::vector<double> acc(width);
  double ll_prev = 0.0;
  int iter = 0;
  bool converged = false;
  double ll_cur = 0.0;

  for (;;) {
    // one pass: log-likelihood of the current weights and the
    // unnormalized M-step accumulators
    std::fill(acc.begin(), acc.end(), 0.0);
    ll_cur = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double* row = B.data() + j * width;
      double f = 0.0;
      for (std::size_t i = 0; i < width; ++i) f += w[i] * row[i];
      if (!(f > 0.0)) {
        throw infeasible_error("em_fit: model density vanishes at a data point");
      }
      ll_cur += std::log(f);
      const double inv = 1.0 / f;
      for (std::size_t i = 0; i < width; ++i) acc[i] += w[i] * row[i] * inv;
    }

    if (iter > 0) {
      assert(ll_cur >= ll_prev - 1e-9 * (std::fabs(ll_prev) + 1.0));
      if ((ll_cur - ll_prev) / (std::fabs(ll_prev) + 1.0) < cfg.tol) {
        converged = true;
        break;
      }
      if (iter >= cfg.max_iter) break;
    }

    // M-step: masked indices stay zero (their acc is zero since w is),
    // pinned boundaries stay pinned, free coordinates renormalize
    for (std::size_t i = 0; i < width; ++i) w[i] = acc[i] / static_cast<double>(n);
    project_constraints(w, m, cons);
    if (cfg.symmetric) symmetrize(w);

    ll_prev = ll_cur;
    ++iter;
  }

  return {MixtureWeights(std::move(w)), ll_cur, iter, converged};
}

}  // namespace

InitResult init_weights(std::span<const double> data, int m, InitScheme scheme) {
  if (m < 0) throw std::domain_error("init_weights: degree must be >= 0");
  const std::size_t width = static_cast<std::size_t>(m) + 1;

  switch (scheme) {
    case InitScheme::uniform:
      return {MixtureWeights(std::vector<double>(width, 1.0 / width)), false};

    case InitScheme::binomial: {
      if (data.empty()) throw std::domain_error("init_weights: empty data");
      double xbar = 0.0;
      for (double v : data) xbar += v;
      xbar /= static_cast<double>(data.size());
      if (!(xbar > 0.0 && xbar < 1.0)) {
        return {MixtureWeights(std::vector<double>(width, 1.0 / width)), true};
      }
      std::vector<double> w(width);
      for (int i = 0; i <= m; ++i) {
        w[i] = std::exp(special::log_binom(m, i) + i * std::log(xbar) +
                        (m - i) * std::log1p(-xbar));
      }
      // keep entries strictly positive despite tail underflow
      for (double& v : w) v = std::max(v, 1e-12);
      return {MixtureWeights(std::move(w)), false};
    }

    case InitScheme::empirical: {
      if (data.empty()) throw std::domain_error("init_weights: empty data");
      std::vector<double> w(width);
      double prev = baselines::vitale_cdf(data, m, 0.0);
      for (int i = 0; i <= m; ++i) {
        const double next = baselines::vitale_cdf(data, m, (i + 1.0) / (m + 1.0));
        w[i] = std::max(next - prev, 1e-12);
        prev = next;
      }
      return {MixtureWeights(std::move(w)), false};
    }
  }
  throw std::logic_error("init_weights: unreachable");
}

MixtureWeights apply_symmetry(const MixtureWeights& w) {
  std::vector<double> out(w.values().begin(), w.values().end());
  symmetrize(out);
  return MixtureWeights(std::move(out));
}

FitResult em_fit(std::span<const double> data, int m, const FitConfig& cfg) {
  if (data.empty()) throw std::domain_error("em_fit: empty data");
  if (m < 0) throw std::domain_error("em_fit: degree must be >= 0");
  if (cfg.max_iter < 1) throw std::domain_error("em_fit: max_iter must be >= 1");
  if (!(cfg.tol > 0.0)) throw std::domain_error("em_fit: tol must be > 0");

  const Constraints cons = build_constraints(m, cfg);
  const InitResult init = init_weights(data, m, cfg.init);
  std::vector<double> w(init.weights.values().begin(), init.weights.values().end());
  project_constraints(w, m, cons);
  if (cfg.symmetric) symmetrize(w);
  return em_core(data, m, cfg, std::move(w), cons);
}

FitResult em_fit_from(std::span<const double> data, int m, const FitConfig& cfg,
                      const MixtureWeights& start) {
  if (data.empty()) throw std::domain_error("em_fit: empty data");
  if (start.degree() != m) throw std::invalid_argument("em_fit_from: degree mismatch");
  if (cfg.max_iter < 1) throw std::domain_error("em_fit: max_iter must be >= 1");
  if (!(cfg.tol > 0.0)) throw std::domain_error("em_fit: tol must be > 0");

  const Constraints cons = build_constraints(m, cfg);
  std::vector<double> w(start.values().begin(), start.values().end());
  // guard against absorbed-at-zero coordinates in unconstrained starts
  for (int i = 0; i <= m; ++i) {
    if (!cons.zero[i] && w[i] < 1e-100) w[i] = 1e-100;
  }
  project_constraints(w, m, cons);
  if (cfg.symmetric) symmetrize(w);
  return em_core(data, m, cfg, std::move(w), cons);
}

}  // namespace bernmix::fit
