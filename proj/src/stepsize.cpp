#include "bbstab/stepsize.hpp"

#include <algorithm>
#include <cmath>

#include "bbstab/kernels.hpp"

namespace bbstab {

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::BBRaw: return "BBRaw";
    case Branch::BBSafeguarded: return "BBSafeguarded";
    case Branch::StabCap: return "StabCap";
    case Branch::Bootstrap: return "Bootstrap";
  }
  return "?";
}

std::optional<Branch> parse_branch(std::string_view s) {
  for (Branch b : {Branch::BBRaw, Branch::BBSafeguarded, Branch::StabCap,
                   Branch::Bootstrap})
    if (to_string(b) == s) return b;
  return std::nullopt;
}

namespace stepsize {
namespace {

std::optional<double> usable(double alpha) {
  if (std::isfinite(alpha) && alpha > 0.0) return alpha;
  return std::nullopt;
}

void check_lengths(const StepPair& pair) {
  if (pair.s.size() != pair.y.size())
    throw std::invalid_argument("step pair vectors differ in length");
}

}  // namespace

std::optional<double> bb1(const StepPair& pair) {
  check_lengths(pair);
  const double sy = kernels::dot(pair.s, pair.y);
  if (!(sy > 0.0)) return std::nullopt;
  return usable(kernels::dot(pair.s, pair.s) / sy);
}

std::optional<double> bb2(const StepPair& pair) {
  check_lengths(pair);
  const double sy = kernels::dot(pair.s, pair.y);
  if (!(sy > 0.0)) return std::nullopt;
  const double yy = kernels::dot(pair.y, pair.y);
  if (!(yy > 0.0)) return std::nullopt;
  return usable(sy / yy);
}

StepsizeOutcome safeguarded_bb(const StepPair& pair, Rule rule) {
  check_lengths(pair);
  const double y_norm = kernels::nrm2(pair.y);
  if (!(y_norm > 0.0))
    throw DegeneratePairError("safeguarded_bb: y = 0");
  const auto raw = rule == Rule::BB1 ? bb1(pair) : bb2(pair);
  if (raw) return {*raw, Branch::BBRaw};
  return {kernels::nrm2(pair.s) / y_norm, Branch::BBSafeguarded};
}

double stab_stepsize_from_norm(double delta, double g_norm) {
  if (!(delta > 0.0))
    throw std::invalid_argument("stab_stepsize: delta must be positive");
  if (!(g_norm > 0.0))
    throw std::invalid_argument("stab_stepsize: g must be nonzero");
  if (std::isinf(delta)) return kInfinity;
  return delta / g_norm;
}

double stab_stepsize(double delta, std::span<const double> g) {
  return stab_stepsize_from_norm(delta, kernels::nrm2(g));
}

StepsizeOutcome combined_stepsize(double alpha_bb, Branch bb_branch,
                                  double alpha_stab) {
  if (alpha_stab < alpha_bb) return {alpha_stab, Branch::StabCap};
  return {alpha_bb, bb_branch};
}

double adaptive_delta(std::span<const double, 3> step_norms, double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("adaptive_delta: c must be positive");
  for (double v : step_norms)
    if (!std::isfinite(v) || !(v > 0.0))
      throw std::invalid_argument(
          "adaptive_delta: step norms must be finite and positive");
  return c * std::min({step_norms[0], step_norms[1], step_norms[2]});
}

}  // namespace stepsize
}  // namespace bbstab
