#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bernmix {

// Simplex-constrained coefficient vector of a degree-m beta mixture:
// m+1 non-negative weights summing to 1.  Stored normalized.
class MixtureWeights {
 public:
  explicit MixtureWeights(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) throw std::invalid_argument("MixtureWeights: empty vector");
    double sum = 0.0;
    for (double v : w_) {
      if (v < 0.0) throw std::invalid_argument("MixtureWeights: negative entry");
      sum += v;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("MixtureWeights: zero mass");
    for (double& v : w_) v /= sum;
  }

  static MixtureWeights uniform(int degree) {
    if (degree < 0) throw std::invalid_argument("MixtureWeights: negative degree");
    return MixtureWeights(std::vector<double>(degree + 1, 1.0));
  }

  int degree() const { return static_cast<int>(w_.size()) - 1; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> values() const { return w_; }

 private:
  std::vector<double> w_;
};

}  // namespace bernmix
