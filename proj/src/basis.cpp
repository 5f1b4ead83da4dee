#include "bernmix/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bernmix/special.hpp"

namespace bernmix::basis {

namespace {

// Core recurrence on u = min(t, 1-t), so the (1-u) denominator never
// shrinks below 1/2:
//   beta_{m0}(u) = (m+1)(1-u)^m,
//   beta_{m,i+1}(u) = beta_{mi}(u) * (m-i) u / {(i+1)(1-u)}.
// Values never exceed m+1, so the only hazard is underflow of the
// starting term; in that case the same recurrence is carried in logs.
void eval_basis_half(int m, double u, std::span<double> out) {
  const double start_log = m * std::log1p(-u);
  if (start_log > -700.0) {
    double v = (m + 1) * std::exp(start_log);
    const double ratio = u / (1.0 - u);
    out[0] = v;
    for (int i = 0; i < m; ++i) {
      v *= ratio * (m - i) / (i + 1.0);
      out[i + 1] = v;
    }
    return;
  }
  const double log_step = std::log(u) - std::log1p(-u);
  double lv = std::log(m + 1.0) + start_log;
  out[0] = std::exp(lv);
  for (int i = 0; i < m; ++i) {
    lv += log_step + std::log((m - i) / (i + 1.0));
    out[i + 1] = std::exp(lv);
  }
}

}  // namespace

void eval_basis_into(int m, double t, std::span<double> out) {
  if (m < 0) throw std::domain_error("eval_basis: degree must be >= 0");
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval_basis: t outside [0,1]");
  if (out.size() != static_cast<std::size_t>(m) + 1)
    throw std::invalid_argument("eval_basis_into: bad output size");

  if (t == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = m + 1.0;
    return;
  }
  if (t == 1.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[m] = m + 1.0;
    return;
  }
  if (t <= 0.5) {
    eval_basis_half(m, t, out);
    return;
  }
  // mirrored recurrence: beta_{mi}(t) = beta_{m,m-i}(1-t)
  eval_basis_half(m, 1.0 - t, out);
  std::reverse(out.begin(), out.end());
}

BasisRow eval_basis(int m, double t) {
  BasisRow row{m, t, std::vector<double>(static_cast<std::size_t>(m) + 1)};
  eval_basis_into(m, t, row.values);
  return row;
}

std::vector<double> eval_basis_cdf(int m, double t) {
  if (m < 0) throw std::domain_error("eval_basis_cdf: degree must be >= 0");
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval_basis_cdf: t outside [0,1]");
  std::vector<double> out(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    out[i] = special::inc_beta(i + 1.0, m - i + 1.0, t);
  }
  return out;
}

MixtureWeights elevate_degree(const MixtureWeights& p, int r) {
  if (r <= 0) throw std::domain_error("elevate_degree: r must be positive");
  const int m = p.degree();
  const int big = m + r;

  // cumulative log-binomials for the three rows that appear in the
  // coefficient formula
  std::vector<double> lcm(m + 1), lcr(r + 1), lcb(big + 1);
  for (int i = 0; i <= m; ++i) lcm[i] = special::log_binom(m, i);
  for (int j = 0; j <= r; ++j) lcr[j] = special::log_binom(r, j);
  for (int j = 0; j <= big; ++j) lcb[j] = special::log_binom(big, j);

  const double scale = (m + 1.0) / (big + 1.0);
  std::vector<double> out(static_cast<std::size_t>(big) + 1, 0.0);
  for (int j = 0; j <= big; ++j) {
    const int i_lo = std::max(0, j - r);
    const int i_hi = std::min(m, j);
    double acc = 0.0;
    for (int i = i_lo; i <= i_hi; ++i) {
      acc += p[i] * std::exp(lcm[i] + lcr[j - i] - lcb[j]);
    }
    out[j] = scale * acc;
  }
  return MixtureWeights(std::move(out));  // re-normalizes the ~1e-15 drift
}

}  // namespace bernmix::basis
