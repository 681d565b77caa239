#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bbstab/harness/diagnostics.hpp"

namespace bbstab::harness {

struct CheckReport {
  std::string suite;
  Diagnostic diagnostic;
};

/// gradients, stepsize, cycle, bounds, contraction, envelope
const std::vector<std::string>& check_suites();

/// Runs one suite, or every suite for "all". Randomized inputs are drawn
/// from `seed`. Throws UsageError for an unknown selector.
std::vector<CheckReport> run_checks(std::string_view selector,
                                    std::uint64_t seed = 1);

/// One JSON object per line:
/// {"suite","check","passed","measured","tolerance","detail"}
void write_check_json(std::ostream& out, const std::vector<CheckReport>& reports);

bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace bbstab::harness
