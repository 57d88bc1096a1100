#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isopdm {

/// Point outside a map's domain, at an excluded singular point, or at a
/// degenerate (zero scale factor) point where the operation is undefined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument outside the range an algorithm is validated for.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Iterative solver ran out of budget. Carries the best residual reached
/// for each requested eigenpair.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> best_residuals)
      : std::runtime_error(what), best_residuals_(std::move(best_residuals)) {}

  const std::vector<double>& best_residuals() const noexcept { return best_residuals_; }

 private:
  std::vector<double> best_residuals_;
};

}  // namespace isopdm
