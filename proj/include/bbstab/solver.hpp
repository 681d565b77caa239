#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bbstab/core.hpp"
#include "bbstab/stepsize.hpp"

namespace bbstab {

/// Per-iteration memory of the stabilized BB loop.
struct IterateState {
  std::size_t k = 0;
  Vector x;
  Vector g;
  Vector s_prev;
  Vector y_prev;
  double alpha_prev = 0.0;
};

/// One row per step taken. Record k describes the move from x_k to x_{k+1};
/// record 0 is the move that produced x_1.
struct TraceRecord {
  std::size_t k = 0;
  double g_norm = 0.0;
  double s_norm = 0.0;  // alpha * |g_k|
  double alpha = 0.0;
  Branch branch = Branch::BBRaw;
  std::optional<Region> region;
  std::optional<double> q_k;  // 1 - L1*D/|g_k|, only inside Omega3

  bool operator==(const TraceRecord&) const = default;
};

struct SolveResult {
  Termination termination{Status::IterationLimit, 0};
  std::size_t iterations = 0;
  Vector final_x;
  double final_g_norm = 0.0;
  double g0_norm = 0.0;
  std::vector<TraceRecord> trace;
  std::size_t stab_step_count = 0;
  std::optional<std::size_t> last_stab_iteration;
  std::optional<std::size_t> first_bb_iteration;
  double delta_used = kInfinity;
  // First iteration taken under a finite radius (1 for fixed, 4 for adaptive).
  std::optional<std::size_t> delta_from_iteration;
  // Filled only when SolverConfig::keep_iterates is set: x_0, x_1, ...
  std::vector<Vector> iterates;

  Status status() const { return termination.status; }
};

enum class BootstrapStatus { Ok, ZeroGradient, NoDescent, NonFinite };

struct BootstrapResult {
  BootstrapStatus status = BootstrapStatus::Ok;
  Vector x1;
  double alpha = 0.0;  // effective 1/|g0|_inf / 4^backtracks
  int backtracks = 0;
};

/// x1 = x0 - alpha0 g0 with alpha0 = 1/|g0|_inf, dividing the step by 4
/// until f decreases (at most backtracking_max times). The only place
/// function values are evaluated.
BootstrapResult bootstrap_x1(const Problem& problem,
                             std::span<const double> x0, int backtracking_max);

/// x1 = x0 - g0/|g0|_inf without a descent test (quadratic experiments).
/// Empty when g0 = 0 or non-finite.
std::optional<Vector> quadratic_x1(const Problem& problem,
                                   std::span<const double> x0);

/// Stabilized BB from a single point, x1 produced by quadratic_x1.
SolveResult run_direct_start(const Problem& problem, std::span<const double> x0,
                             const SolverConfig& config);

/// Stabilized BB from a single point, x1 produced by bootstrap_x1.
SolveResult run(const Problem& problem, std::span<const double> x0,
                const SolverConfig& config);

/// Stabilized BB from a given pair x0 != x1 (throws std::invalid_argument if
/// x0 == x1 or dimensions differ).
SolveResult run_from_pair(const Problem& problem, std::span<const double> x0,
                          std::span<const double> x1,
                          const SolverConfig& config);

/// run() with the radius forced to +inf: the plain BB1/BB2 method.
SolveResult reference_bb_run(const Problem& problem, std::span<const double> x0,
                             SolverConfig config);
SolveResult reference_bb_run_from_pair(const Problem& problem,
                                       std::span<const double> x0,
                                       std::span<const double> x1,
                                       SolverConfig config);

}  // namespace bbstab
