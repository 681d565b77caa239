#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bbstab/core.hpp"
#include "bbstab/stepsize.hpp"

namespace bbstab::oracles {

/// Thrown when a finite-difference stencil point has a non-finite value.
class NonFiniteStencil : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GradientCheck {
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
};

/// Central differences (f(x + h_i e_i) - f(x - h_i e_i)) / (2 h_i) compared
/// with the analytic gradient, error |fd - g| / max(1, |g|). With h <= 0 the
/// step is h_i = 1e-6 * max(1, |x_i|).
GradientCheck fd_gradient_check(const Problem& problem,
                                std::span<const double> x, double h = 0.0);

struct LeastSquaresStepsizes {
  double alpha1;  // argmin over a of |s/a - y|
  double alpha2;  // argmin over a of |s - a y|
};

/// Minimizes both secant residuals by golden-section search followed by a
/// three-point parabolic fit, using only residual evaluations. Throws
/// std::invalid_argument if s = 0 or y = 0.
LeastSquaresStepsizes stepsize_oracle(const StepPair& pair);

struct CycleReport {
  std::optional<std::size_t> period;
  double max_deviation = 0.0;  // max |x_{k+p} - x_k| over the window, for p
  std::size_t window_start = 0;
  std::size_t window_end = 0;
};

/// Smallest p <= max_period with |x_{k+p} - x_k| <= tol over the trailing
/// two thirds of the sequence, while the points inside one period stay more
/// than 10 tol apart (so fixed points are never reported). Throws
/// std::invalid_argument if fewer than 3 * max_period iterates are given.
CycleReport detect_cycle(std::span<const Vector> iterates,
                         std::size_t max_period, double tol);

enum class ErrorMeasure { IterateError, GradientNorm };

struct RLinearFit {
  double gamma = 0.0;     // e_k <= gamma * c^k for every fitted k
  double c = 0.0;         // exp(slope) of the least-squares fit of log e_k
  double residual = 0.0;  // max (log e_k - fitted line), at least 0
  bool r_linear = false;  // c < 1 - 1e-6
  std::size_t points = 0;
  ErrorMeasure measure = ErrorMeasure::IterateError;
};

/// Fits log(errors[k]) ~ a + k log c for k >= skip, truncating at the first
/// exact zero. k is the index into `errors`. Throws std::invalid_argument if
/// fewer than 10 points remain or any value is negative or non-finite.
RLinearFit fit_rlinear_envelope(std::span<const double> errors,
                                std::size_t skip = 0,
                                ErrorMeasure measure = ErrorMeasure::IterateError);

}  // namespace bbstab::oracles
