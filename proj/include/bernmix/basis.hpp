#pragma once

#include <span>
#include <vector>

#include "bernmix/mixture_weights.hpp"

namespace bernmix::basis {

// One evaluation of the beta-density basis at a point: values[i] holds
// beta_{mi}(t) = (m+1) C(m,i) t^i (1-t)^(m-i), the beta(i+1, m-i+1) density.
struct BasisRow {
  int degree;
  double t;
  std::vector<double> values;
};

// Evaluates beta_{mi}(t), i = 0..m, by the stable one-sided recurrence
// (mirrored for t > 1/2, log-space when the starting term would
// underflow).  Safe for degrees up to at least 10000.
BasisRow eval_basis(int m, double t);

// Allocation-free variant for hot loops; out must have m+1 slots.
void eval_basis_into(int m, double t, std::span<double> out);

// Basis cdfs B_{mi}(t) = I_t(i+1, m-i+1), i = 0..m.
std::vector<double> eval_basis_cdf(int m, double t);

// Degree elevation: rewrites a degree-m mixture as the pointwise-identical
// degree-(m+r) mixture,
//   p'_j = (m+1)/(m+r+1) * sum_i p_i C(m,i) C(r,j-i) / C(m+r,j).
MixtureWeights elevate_degree(const MixtureWeights& p, int r);

}  // namespace bernmix::basis
