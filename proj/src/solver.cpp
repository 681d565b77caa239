#include "bbstab/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "bbstab/kernels.hpp"

namespace bbstab {
namespace {

// Iterations 2..4 form s_1..s_3; the adaptive radius is fixed at k = 4.
constexpr std::size_t kAdaptiveFirst = 2;
constexpr std::size_t kAdaptiveLast = 4;

void require_finite_point(std::span<const double> x, std::size_t n,
                          const char* what) {
  if (x.size() != n)
    throw std::invalid_argument(std::string(what) + " has wrong dimension");
  if (!kernels::serial::all_finite(x))
    throw std::invalid_argument(std::string(what) + " is not finite");
}

class StabilizedBB {
 public:
  StabilizedBB(const Problem& problem, const SolverConfig& config)
      : problem_(problem), config_(config) {
    switch (config.delta_policy.kind) {
      case DeltaPolicy::Kind::Fixed:
        delta_ = config.delta_policy.value;
        result_.delta_from_iteration = 1;
        break;
      case DeltaPolicy::Kind::Infinite:
      case DeltaPolicy::Kind::Adaptive: delta_ = kInfinity; break;
    }
  }

  SolveResult solve(std::span<const double> x0, std::span<const double> x1,
                    double bootstrap_alpha) {
    const std::size_t n = problem_.dimension();
    Vector x_prev(x0.begin(), x0.end());
    Vector x(x1.begin(), x1.end());
    Vector g_prev(n), g(n), s(n), y(n);

    problem_.gradient_into(x_prev, g_prev);
    const double g0_norm = kernels::nrm2(g_prev);
    result_.g0_norm = g0_norm;
    if (config_.keep_iterates) result_.iterates.push_back(x_prev);

    if (!std::isfinite(g0_norm))
      return finish({Status::NonFiniteEncountered, 0}, x_prev, g0_norm);
    if (g0_norm == 0.0)
      return finish({Status::ZeroGradient, 0}, x_prev, g0_norm);

    kernels::sub(x, x_prev, s);
    const double s0_norm = kernels::nrm2(s);
    result_.trace.push_back(TraceRecord{.k = 0,
                                        .g_norm = g0_norm,
                                        .s_norm = s0_norm,
                                        .alpha = bootstrap_alpha,
                                        .branch = Branch::Bootstrap,
                                        .region = std::nullopt,
                                        .q_k = std::nullopt});
    double alpha_prev = s0_norm / g0_norm;

    if (config_.keep_iterates) result_.iterates.push_back(x);
    problem_.gradient_into(x, g);

    std::array<double, 3> adaptive_norms{};
    for (std::size_t k = 1;; ++k) {
      const double g_norm = kernels::nrm2(g);
      if (auto stop = should_terminate(g_norm, g0_norm, k, config_))
        return finish(*stop, x, g_norm);

      kernels::sub(x, x_prev, s);
      kernels::sub(g, g_prev, y);
      const double s_norm = kernels::nrm2(s);
      const double y_norm = kernels::nrm2(y);
      const double sy = kernels::dot(s, y);
      if (!std::isfinite(s_norm) || !std::isfinite(y_norm) ||
          !std::isfinite(sy))
        return finish({Status::NonFiniteEncountered, k}, x, g_norm);

      update_adaptive_delta(k, s_norm, adaptive_norms);

      const StepsizeOutcome chosen =
          choose_step(StepPair{s, y}, s_norm, y_norm, g_norm, alpha_prev);
      if (!std::isfinite(chosen.alpha))
        return finish({Status::NonFiniteEncountered, k}, x, g_norm);

      record(k, g_norm, chosen);
      alpha_prev = chosen.alpha;

      x_prev.swap(x);
      g_prev.swap(g);
      kernels::step(x_prev, chosen.alpha, g_prev, x);
      if (config_.keep_iterates) result_.iterates.push_back(x);
      if (!kernels::all_finite(x))
        return finish({Status::NonFiniteEncountered, k + 1}, x,
                      std::nan(""));
      problem_.gradient_into(x, g);
    }
  }

 private:
  void update_adaptive_delta(std::size_t k, double s_norm,
                             std::array<double, 3>& norms) {
    if (config_.delta_policy.kind != DeltaPolicy::Kind::Adaptive) return;
    if (k < kAdaptiveFirst || k > kAdaptiveLast || adaptive_failed_) return;
    if (!(s_norm > 0.0)) {
      adaptive_failed_ = true;
      return;
    }
    norms[k - kAdaptiveFirst] = s_norm;
    if (k == kAdaptiveLast) {
      delta_ = stepsize::adaptive_delta(norms, config_.delta_policy.value);
      result_.delta_from_iteration = k;
    }
  }

  StepsizeOutcome choose_step(const StepPair& pair, double s_norm,
                              double y_norm, double g_norm,
                              double alpha_prev) const {
    const double alpha_stab = stepsize::stab_stepsize_from_norm(delta_, g_norm);
    if (!(s_norm > 0.0) || !(y_norm > 0.0)) {
      // No curvature information: fall back to the cap, or repeat the last
      // step when there is no cap.
      if (std::isfinite(delta_)) return {alpha_stab, Branch::StabCap};
      return {alpha_prev, Branch::BBSafeguarded};
    }
    StepsizeOutcome bb{};
    if (config_.safeguard_nonconvex) {
      bb = stepsize::safeguarded_bb(pair, config_.rule);
    } else {
      const double sy = kernels::dot(pair.s, pair.y);
      bb.alpha = config_.rule == Rule::BB1
                     ? kernels::dot(pair.s, pair.s) / sy
                     : sy / kernels::dot(pair.y, pair.y);
      bb.branch = Branch::BBRaw;
    }
    return stepsize::combined_stepsize(bb.alpha, bb.branch, alpha_stab);
  }

  void record(std::size_t k, double g_norm, const StepsizeOutcome& chosen) {
    TraceRecord rec{.k = k,
                    .g_norm = g_norm,
                    .s_norm = std::abs(chosen.alpha) * g_norm,
                    .alpha = chosen.alpha,
                    .branch = chosen.branch,
                    .region = std::nullopt,
                    .q_k = std::nullopt};
    const auto& bounds = problem_.spectral_bounds();
    if (bounds && std::isfinite(delta_)) {
      rec.region = classify_region(g_norm, delta_, *bounds);
      if (in_omega3(*rec.region))
        rec.q_k = 1.0 - bounds->lambda_lo() * delta_ / g_norm;
    }
    if (chosen.branch == Branch::StabCap) {
      ++result_.stab_step_count;
      result_.last_stab_iteration = k;
    } else if (!result_.first_bb_iteration) {
      result_.first_bb_iteration = k;
    }
    result_.trace.push_back(rec);
  }

  SolveResult finish(Termination termination, const Vector& x,
                     double g_norm) {
    result_.termination = termination;
    result_.iterations = termination.iteration;
    result_.final_x = x;
    result_.final_g_norm = g_norm;
    result_.delta_used = delta_;
    return std::move(result_);
  }

  const Problem& problem_;
  const SolverConfig& config_;
  double delta_ = kInfinity;
  bool adaptive_failed_ = false;
  SolveResult result_;
};

SolveResult bootstrap_failure(const BootstrapResult& boot,
                              std::span<const double> x0, double g0_norm) {
  SolveResult result;
  switch (boot.status) {
    case BootstrapStatus::ZeroGradient:
      result.termination = {Status::ZeroGradient, 0};
      break;
    case BootstrapStatus::NonFinite:
      result.termination = {Status::NonFiniteEncountered, 0};
      break;
    case BootstrapStatus::NoDescent:
    case BootstrapStatus::Ok:
      result.termination = {Status::BootstrapFailed, 0};
      break;
  }
  result.final_x.assign(x0.begin(), x0.end());
  result.final_g_norm = g0_norm;
  result.g0_norm = g0_norm;
  return result;
}

}  // namespace

BootstrapResult bootstrap_x1(const Problem& problem,
                             std::span<const double> x0,
                             int backtracking_max) {
  require_finite_point(x0, problem.dimension(), "x0");
  BootstrapResult out;
  const Vector g0 = problem.gradient_at(x0);
  const double g_inf = kernels::nrm_inf(g0);
  if (!std::isfinite(g_inf)) {
    out.status = BootstrapStatus::NonFinite;
    return out;
  }
  if (g_inf == 0.0) {
    out.status = BootstrapStatus::ZeroGradient;
    return out;
  }
  const double f0 = problem.value_at(x0);
  if (!std::isfinite(f0)) {
    out.status = BootstrapStatus::NonFinite;
    return out;
  }

  double alpha = 1.0 / g_inf;
  Vector x1(x0.size());
  for (int divisions = 0;; ++divisions) {
    kernels::step(x0, alpha, g0, x1);
    if (problem.value_at(x1) < f0) {
      out.x1 = std::move(x1);
      out.alpha = alpha;
      out.backtracks = divisions;
      return out;
    }
    if (divisions == backtracking_max) break;
    alpha /= 4.0;
  }
  out.status = BootstrapStatus::NoDescent;
  out.backtracks = backtracking_max;
  return out;
}

std::optional<Vector> quadratic_x1(const Problem& problem,
                                   std::span<const double> x0) {
  require_finite_point(x0, problem.dimension(), "x0");
  const Vector g0 = problem.gradient_at(x0);
  const double g_inf = kernels::nrm_inf(g0);
  if (!std::isfinite(g_inf) || g_inf == 0.0) return std::nullopt;
  Vector x1(x0.size());
  kernels::step(x0, 1.0 / g_inf, g0, x1);
  return x1;
}

SolveResult run(const Problem& problem, std::span<const double> x0,
                const SolverConfig& config) {
  const BootstrapResult boot =
      bootstrap_x1(problem, x0, config.backtracking_max);
  if (boot.status != BootstrapStatus::Ok) {
    return bootstrap_failure(boot, x0,
                             kernels::nrm2(problem.gradient_at(x0)));
  }
  StabilizedBB solver(problem, config);
  return solver.solve(x0, boot.x1, boot.alpha);
}

SolveResult run_direct_start(const Problem& problem, std::span<const double> x0,
                             const SolverConfig& config) {
  require_finite_point(x0, problem.dimension(), "x0");
  const Vector g0 = problem.gradient_at(x0);
  const double g_inf = kernels::nrm_inf(g0);
  if (!std::isfinite(g_inf) || g_inf == 0.0) {
    BootstrapResult boot;
    boot.status = std::isfinite(g_inf) ? BootstrapStatus::ZeroGradient
                                       : BootstrapStatus::NonFinite;
    return bootstrap_failure(boot, x0, kernels::nrm2(g0));
  }
  const double alpha = 1.0 / g_inf;
  Vector x1(x0.size());
  kernels::step(x0, alpha, g0, x1);
  StabilizedBB solver(problem, config);
  return solver.solve(x0, x1, alpha);
}

SolveResult run_from_pair(const Problem& problem, std::span<const double> x0,
                          std::span<const double> x1,
                          const SolverConfig& config) {
  require_finite_point(x0, problem.dimension(), "x0");
  require_finite_point(x1, problem.dimension(), "x1");
  if (std::equal(x0.begin(), x0.end(), x1.begin()))
    throw std::invalid_argument("run_from_pair requires x0 != x1");
  StabilizedBB solver(problem, config);
  return solver.solve(x0, x1, std::nan(""));
}

SolveResult reference_bb_run(const Problem& problem, std::span<const double> x0,
                             SolverConfig config) {
  config.delta_policy = DeltaPolicy::infinite();
  return run(problem, x0, config);
}

SolveResult reference_bb_run_from_pair(const Problem& problem,
                                       std::span<const double> x0,
                                       std::span<const double> x1,
                                       SolverConfig config) {
  config.delta_policy = DeltaPolicy::infinite();
  return run_from_pair(problem, x0, x1, config);
}

}  // namespace bbstab
