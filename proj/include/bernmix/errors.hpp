#pragma once

#include <stdexcept>
#include <string>

namespace bernmix {

// Thrown when a mixture model assigns zero density to an observed data
// point (e.g. all admissible components vanish there under a zero mask).
// Callers such as the EM driver and the degree sweep treat this as
// "model infeasible", not as a programming error.
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bernmix
