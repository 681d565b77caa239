#pragma once

#include <string>

#include "bbstab/core.hpp"
#include "bbstab/solver.hpp"

namespace bbstab::harness {

/// Outcome of one runtime invariant check. `measured` is the worst value
/// seen and `tolerance` the threshold it was compared with.
struct Diagnostic {
  std::string name;
  bool passed = true;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Every BB-branch stepsize (k >= 1) lies in [1/L2 - tol, 1/L1 + tol].
/// measured = largest distance outside the interval (0 when inside).
Diagnostic check_alpha_bounds(const SolveResult& result,
                              const SpectralBounds& bounds, double abs_tol);

/// Every step record with k >= 1 has s_norm <= delta (1 + 4 eps).
/// measured = max s_norm / delta.
Diagnostic check_step_cap(const SolveResult& result);

/// In Omega3: |g_{k+1}| <= q_k |g_k|; elsewhere |g_{k+1}| <= kappa |g_k|,
/// both with relative slack. measured = max ratio of |g_{k+1}| to its bound.
Diagnostic check_contraction(const SolveResult& result,
                             const SpectralBounds& bounds, double rel_slack);

/// Once a record is in Omega1, Omega2 or Omega3', no later record is in
/// Omega3Outer. measured = number of violations.
Diagnostic check_absorption(const SolveResult& result);

/// stab_step_count equals the number of StabCap records.
Diagnostic check_stab_count(const SolveResult& result);

}  // namespace bbstab::harness
