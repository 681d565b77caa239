#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

#include "bbstab/core.hpp"

namespace bbstab {

/// s = x_k - x_{k-1}, y = g_k - g_{k-1}. Non-owning; both spans must have
/// equal length.
struct StepPair {
  std::span<const double> s;
  std::span<const double> y;
};

enum class Branch { BBRaw, BBSafeguarded, StabCap, Bootstrap };

std::string_view to_string(Branch b);
std::optional<Branch> parse_branch(std::string_view s);

struct StepsizeOutcome {
  double alpha;
  Branch branch;
};

/// Raised by safeguarded_bb when y = 0 (no curvature information at all).
class DegeneratePairError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace stepsize {

/// s's / s'y. Empty when s'y <= 0 or the quotient is not a finite positive
/// number.
std::optional<double> bb1(const StepPair& pair);

/// s'y / y'y. Empty when s'y <= 0, y = 0, or the quotient is not a finite
/// positive number.
std::optional<double> bb2(const StepPair& pair);

/// BB value for `rule`, replaced by |s|/|y| whenever the raw value is
/// unusable (s'y <= 0 included).
StepsizeOutcome safeguarded_bb(const StepPair& pair, Rule rule);

/// delta / |g|. +inf when delta is +inf. Throws std::invalid_argument for
/// g = 0 or non-positive delta.
double stab_stepsize(double delta, std::span<const double> g);
/// Same, given |g| directly.
double stab_stepsize_from_norm(double delta, double g_norm);

/// min(alpha_bb, alpha_stab); ties go to the BB branch.
StepsizeOutcome combined_stepsize(double alpha_bb, Branch bb_branch,
                                  double alpha_stab);
inline StepsizeOutcome combined_stepsize(double alpha_bb, double alpha_stab) {
  return combined_stepsize(alpha_bb, Branch::BBRaw, alpha_stab);
}

/// c * min of the three step norms. Throws std::invalid_argument if any norm
/// is zero or non-finite, or c is not positive.
double adaptive_delta(std::span<const double, 3> step_norms, double c);
inline double adaptive_delta(const std::array<double, 3>& step_norms,
                             double c) {
  return adaptive_delta(std::span<const double, 3>(step_norms), c);
}

}  // namespace stepsize
}  // namespace bbstab
