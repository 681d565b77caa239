#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bbstab/harness/diagnostics.hpp"
#include "bbstab/harness/options.hpp"
#include "bbstab/harness/tables.hpp"
#include "bbstab/solver.hpp"

namespace bbstab::harness {

/// One problem, one start, several solver configurations.
struct ExperimentSpec {
  std::string problem;      // selector for parse_problem; empty with a matrix
  std::string matrix_path;  // Matrix Market file; empty with a selector
  StartSpec start;
  std::vector<SolverConfig> configs;
  std::string out_dir;  // empty: nothing is written
  std::uint64_t seed = 1;
};

/// Flat key-value text, one "key = value" per line, '#' comments:
///   problem = raydan:n=1000     (or: matrix = path/to/A.mtx)
///   x0 = const:-10
///   solver = bb1 inf            (repeatable: <rule> <delta>)
///   maxit = 100000
///   tol = 1e-6
///   out = results/raydan
///   seed = 7
/// maxit and tol apply to every solver line. Throws UsageError.
ExperimentSpec parse_experiment_spec(std::istream& in);

struct CellResult {
  std::string solver;
  SolverConfig config;
  SolveResult result;
  std::vector<Diagnostic> diagnostics;
};

struct ExperimentResult {
  std::string problem;
  std::size_t n = 0;
  std::vector<CellResult> cells;
  // Checks on the problem itself (finite-difference gradient at a seeded
  // point near x0), shared by every cell.
  std::vector<Diagnostic> problem_diagnostics;

  std::vector<SummaryRow> summary() const;
  bool diagnostics_passed() const;
};

/// Runs every configuration (cells in parallel) and attaches diagnostics:
/// step cap and stab count always; alpha bounds, contraction and absorption
/// when spectral bounds are known; cycle detection for the counterexample.
/// Solver failures are recorded in the results, not thrown.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// trace_<solver>.csv per cell, summary.csv, diagnostics.csv.
void write_experiment(const ExperimentResult& result, const std::string& out_dir);

/// Filename-safe version of a solver label.
std::string file_stem(const std::string& label);

}  // namespace bbstab::harness
