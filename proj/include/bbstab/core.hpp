#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "bbstab/kernels.hpp"

namespace bbstab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Uniform Hessian eigenvalue bounds 0 < lambda_lo <= lambda_hi.
class SpectralBounds {
 public:
  /// Throws std::invalid_argument unless 0 < lo <= hi and both are finite.
  SpectralBounds(double lambda_lo, double lambda_hi);

  double lambda_lo() const { return lo_; }
  double lambda_hi() const { return hi_; }
  double kappa() const { return hi_ / lo_; }

  bool operator==(const SpectralBounds&) const = default;

 private:
  double lo_;
  double hi_;
};

/// A differentiable objective. Value and gradient are held as callables so
/// that analytic problems, sparse quadratics and test wrappers share one type.
class Problem {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn =
      std::function<void(std::span<const double>, std::span<double>)>;

  Problem(std::string name, std::size_t dimension, ValueFn value,
          GradientFn gradient);

  Problem& set_minimizer(Vector x);
  Problem& set_spectral_bounds(SpectralBounds bounds);

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return dimension_; }

  double value_at(std::span<const double> x) const;
  Vector gradient_at(std::span<const double> x) const;
  void gradient_into(std::span<const double> x, std::span<double> out) const;

  const std::optional<Vector>& minimizer() const { return minimizer_; }
  const std::optional<SpectralBounds>& spectral_bounds() const {
    return bounds_;
  }

 private:
  std::string name_;
  std::size_t dimension_;
  ValueFn value_;
  GradientFn gradient_;
  std::optional<Vector> minimizer_;
  std::optional<SpectralBounds> bounds_;
};

enum class Region { Omega1, Omega2, Omega3Prime, Omega3Outer };

std::string_view to_string(Region r);
std::optional<Region> parse_region(std::string_view s);
inline bool in_omega3(Region r) {
  return r == Region::Omega3Prime || r == Region::Omega3Outer;
}

/// Omega1: |g| <= L1*D, Omega2: up to L2*D, Omega3': up to kappa*L2*D,
/// Omega3Outer: beyond. Throws std::invalid_argument on non-finite g_norm or
/// non-positive / non-finite delta.
Region classify_region(double g_norm, double delta,
                       const SpectralBounds& bounds);

enum class Status {
  Converged,
  IterationLimit,
  NonFiniteEncountered,
  ZeroGradient,
  BootstrapFailed,
};

std::string_view to_string(Status s);
std::optional<Status> parse_status(std::string_view s);

struct Termination {
  Status status;
  std::size_t iteration;

  bool operator==(const Termination&) const = default;
};

enum class Rule { BB1, BB2 };

std::string_view to_string(Rule r);

/// How the stabilization radius is chosen. Infinite leaves plain BB steps;
/// Adaptive runs three uncapped iterations and then freezes
/// delta = c * min(|s1|, |s2|, |s3|).
struct DeltaPolicy {
  enum class Kind { Infinite, Fixed, Adaptive };

  Kind kind = Kind::Infinite;
  double value = kInfinity;  // delta for Fixed, c for Adaptive

  static DeltaPolicy infinite() { return {}; }
  static DeltaPolicy fixed(double delta);
  static DeltaPolicy adaptive(double c);

  bool operator==(const DeltaPolicy&) const = default;
};

struct SolverConfig {
  Rule rule = Rule::BB1;
  DeltaPolicy delta_policy;
  std::size_t max_iterations = 100000;
  double rel_tol = 1e-6;
  bool safeguard_nonconvex = true;
  int backtracking_max = 30;
  // Store every iterate in SolveResult::iterates (cycle diagnostics).
  bool keep_iterates = false;
};

/// Order of checks: non-finite, exact zero, convergence, iteration limit.
std::optional<Termination> should_terminate(double g_norm, double g0_norm,
                                            std::size_t iteration,
                                            const SolverConfig& config);

}  // namespace bbstab
