#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bbstab/solver.hpp"

namespace bbstab::harness {

/// Header: k,g_norm,s_norm,alpha,branch,region,q_k. Absent optionals are
/// empty fields; reals use 17 significant digits.
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
void write_trace_csv(const SolveResult& result, const std::string& path);
/// Inverse of write_trace_csv; throws UsageError on malformed input.
std::vector<TraceRecord> read_trace_csv(std::istream& in);

/// One row of the summary table.
struct SummaryRow {
  std::string problem;
  std::size_t n = 0;
  std::string solver;
  Status status = Status::IterationLimit;
  std::size_t iterations = 0;
  double final_gnorm = 0.0;
  double delta = 0.0;
  std::size_t stab_steps = 0;
  std::optional<std::size_t> last_stab_iter;
};

SummaryRow summarize(const std::string& problem, const std::string& solver,
                     std::size_t n, const SolveResult& result);

/// Header: problem,n,solver,status,iterations,final_gnorm,delta,stab_steps,
/// last_stab_iter
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

struct ProblemOutcome {
  bool solved = false;
  std::size_t iterations = 0;
};

/// solver -> problem -> outcome
using OutcomeTable =
    std::map<std::string, std::map<std::string, ProblemOutcome>>;

OutcomeTable outcomes_from_summary(const std::vector<SummaryRow>& rows);

struct ProfileCurve {
  std::string solver;
  std::vector<std::pair<double, double>> points;  // (tau, fraction)
};

/// Fraction of problems each solver solves within tau times the best
/// iteration count. Throws std::invalid_argument on an empty problem set or
/// when a solver is missing a problem.
std::vector<ProfileCurve> performance_profile(const OutcomeTable& results,
                                              const std::vector<double>& taus);

/// n points evenly spaced on [1, tau_max].
std::vector<double> tau_grid(double tau_max, std::size_t n);

/// Header: solver,tau,fraction
void write_profile_csv(std::ostream& out,
                       const std::vector<ProfileCurve>& curves);

}  // namespace bbstab::harness
