#include "bbstab/harness/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace bbstab::harness {
namespace {

bool is_bb(Branch b) { return b == Branch::BBRaw || b == Branch::BBSafeguarded; }

// |g| at iterate k + 1 for trace index i, if recorded and finite.
std::optional<double> next_g_norm(const SolveResult& result, std::size_t i) {
  if (i + 1 < result.trace.size()) return result.trace[i + 1].g_norm;
  if (std::isfinite(result.final_g_norm) &&
      result.iterations == result.trace[i].k + 1)
    return result.final_g_norm;
  return std::nullopt;
}

}  // namespace

Diagnostic check_alpha_bounds(const SolveResult& result,
                              const SpectralBounds& bounds, double abs_tol) {
  Diagnostic d{"alpha_bounds", true, 0.0, abs_tol, ""};
  const double lo = 1.0 / bounds.lambda_hi();
  const double hi = 1.0 / bounds.lambda_lo();
  std::size_t checked = 0;
  for (const TraceRecord& r : result.trace) {
    if (r.k == 0 || !is_bb(r.branch)) continue;
    ++checked;
    const double outside = std::max({0.0, lo - r.alpha, r.alpha - hi});
    if (outside > d.measured) {
      d.measured = outside;
      d.detail = "k=" + std::to_string(r.k);
    }
  }
  d.passed = d.measured <= abs_tol;
  if (d.detail.empty()) d.detail = std::to_string(checked) + " steps";
  return d;
}

Diagnostic check_step_cap(const SolveResult& result) {
  constexpr double kSlack = 4.0 * std::numeric_limits<double>::epsilon();
  Diagnostic d{"step_cap", true, 0.0, 1.0 + kSlack, ""};
  if (!result.delta_from_iteration) {
    d.detail = "no cap";
    return d;
  }
  for (const TraceRecord& r : result.trace) {
    if (r.k < *result.delta_from_iteration) continue;
    d.measured = std::max(d.measured, r.s_norm / result.delta_used);
  }
  d.passed = d.measured <= d.tolerance;
  return d;
}

Diagnostic check_contraction(const SolveResult& result,
                             const SpectralBounds& bounds, double rel_slack) {
  Diagnostic d{"contraction", true, 0.0, 1.0 + rel_slack, ""};
  std::size_t omega3 = 0, other = 0;
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const TraceRecord& r = result.trace[i];
    if (r.k == 0 || !r.region) continue;
    const auto next = next_g_norm(result, i);
    if (!next) continue;
    double bound;
    if (in_omega3(*r.region)) {
      bound = *r.q_k * r.g_norm;
      ++omega3;
    } else {
      bound = bounds.kappa() * r.g_norm;
      ++other;
    }
    const double ratio = *next / bound;
    if (ratio > d.measured) {
      d.measured = ratio;
      d.detail = "k=" + std::to_string(r.k);
    }
  }
  d.passed = d.measured <= d.tolerance;
  d.detail += " (" + std::to_string(omega3) + " in Omega3; " +
              std::to_string(other) + " elsewhere)";
  return d;
}

Diagnostic check_absorption(const SolveResult& result) {
  Diagnostic d{"absorption", true, 0.0, 0.0, ""};
  bool absorbed = false;
  for (const TraceRecord& r : result.trace) {
    if (!r.region) continue;
    if (*r.region == Region::Omega3Outer) {
      if (absorbed) {
        d.measured += 1.0;
        if (d.detail.empty()) d.detail = "first violation k=" + std::to_string(r.k);
      }
    } else {
      absorbed = true;
    }
  }
  d.passed = d.measured == 0.0;
  return d;
}

Diagnostic check_stab_count(const SolveResult& result) {
  const auto capped = std::count_if(
      result.trace.begin(), result.trace.end(),
      [](const TraceRecord& r) { return r.branch == Branch::StabCap; });
  Diagnostic d{"stab_count", true,
               static_cast<double>(capped), static_cast<double>(result.stab_step_count), ""};
  d.passed = static_cast<std::size_t>(capped) == result.stab_step_count;
  return d;
}

}  // namespace bbstab::harness
