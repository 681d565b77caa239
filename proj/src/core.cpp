#include "bbstab/core.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace bbstab {

SpectralBounds::SpectralBounds(double lambda_lo, double lambda_hi)
    : lo_(lambda_lo), hi_(lambda_hi) {
  if (!(std::isfinite(lo_) && std::isfinite(hi_) && lo_ > 0.0 && lo_ <= hi_))
    throw std::invalid_argument(
        "spectral bounds must satisfy 0 < lambda_lo <= lambda_hi < inf");
}

Problem::Problem(std::string name, std::size_t dimension, ValueFn value,
                 GradientFn gradient)
    : name_(std::move(name)),
      dimension_(dimension),
      value_(std::move(value)),
      gradient_(std::move(gradient)) {
  if (dimension_ == 0)
    throw std::invalid_argument("problem dimension must be positive");
  if (!value_ || !gradient_)
    throw std::invalid_argument("problem needs both value and gradient");
}

Problem& Problem::set_minimizer(Vector x) {
  if (x.size() != dimension_)
    throw std::invalid_argument("minimizer has wrong dimension");
  minimizer_ = std::move(x);
  return *this;
}

Problem& Problem::set_spectral_bounds(SpectralBounds bounds) {
  bounds_ = bounds;
  return *this;
}

double Problem::value_at(std::span<const double> x) const {
  if (x.size() != dimension_)
    throw std::invalid_argument("point has wrong dimension");
  return value_(x);
}

Vector Problem::gradient_at(std::span<const double> x) const {
  Vector g(dimension_);
  gradient_into(x, g);
  return g;
}

void Problem::gradient_into(std::span<const double> x,
                            std::span<double> out) const {
  if (x.size() != dimension_ || out.size() != dimension_)
    throw std::invalid_argument("point has wrong dimension");
  gradient_(x, out);
}

namespace {

constexpr std::array<std::pair<Region, std::string_view>, 4> kRegionNames{{
    {Region::Omega1, "Omega1"},
    {Region::Omega2, "Omega2"},
    {Region::Omega3Prime, "Omega3Prime"},
    {Region::Omega3Outer, "Omega3Outer"},
}};

constexpr std::array<std::pair<Status, std::string_view>, 5> kStatusNames{{
    {Status::Converged, "Converged"},
    {Status::IterationLimit, "IterationLimit"},
    {Status::NonFiniteEncountered, "NonFiniteEncountered"},
    {Status::ZeroGradient, "ZeroGradient"},
    {Status::BootstrapFailed, "BootstrapFailed"},
}};

}  // namespace

std::string_view to_string(Region r) {
  for (const auto& [value, name] : kRegionNames)
    if (value == r) return name;
  return "?";
}

std::optional<Region> parse_region(std::string_view s) {
  for (const auto& [value, name] : kRegionNames)
    if (name == s) return value;
  return std::nullopt;
}

std::string_view to_string(Status s) {
  for (const auto& [value, name] : kStatusNames)
    if (value == s) return name;
  return "?";
}

std::optional<Status> parse_status(std::string_view s) {
  for (const auto& [value, name] : kStatusNames)
    if (name == s) return value;
  return std::nullopt;
}

std::string_view to_string(Rule r) { return r == Rule::BB1 ? "bb1" : "bb2"; }

Region classify_region(double g_norm, double delta,
                       const SpectralBounds& bounds) {
  if (!std::isfinite(g_norm) || g_norm < 0.0)
    throw std::invalid_argument("classify_region: g_norm must be finite");
  if (!std::isfinite(delta) || !(delta > 0.0))
    throw std::invalid_argument(
        "classify_region: delta must be finite and positive");
  const double l1d = bounds.lambda_lo() * delta;
  const double l2d = bounds.lambda_hi() * delta;
  if (g_norm <= l1d) return Region::Omega1;
  if (g_norm <= l2d) return Region::Omega2;
  if (g_norm <= bounds.kappa() * l2d) return Region::Omega3Prime;
  return Region::Omega3Outer;
}

DeltaPolicy DeltaPolicy::fixed(double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("fixed delta must be positive");
  // A fixed radius of +inf is the plain method.
  if (std::isinf(delta)) return infinite();
  return {Kind::Fixed, delta};
}

DeltaPolicy DeltaPolicy::adaptive(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("adaptive delta factor must be positive");
  return {Kind::Adaptive, c};
}

std::optional<Termination> should_terminate(double g_norm, double g0_norm,
                                            std::size_t iteration,
                                            const SolverConfig& config) {
  if (!std::isfinite(g_norm))
    return Termination{Status::NonFiniteEncountered, iteration};
  if (g_norm == 0.0) return Termination{Status::ZeroGradient, iteration};
  if (g_norm <= config.rel_tol * g0_norm)
    return Termination{Status::Converged, iteration};
  if (iteration >= config.max_iterations)
    return Termination{Status::IterationLimit, iteration};
  return std::nullopt;
}

}  // namespace bbstab
