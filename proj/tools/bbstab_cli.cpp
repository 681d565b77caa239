// bbstab: run BB / stabilized BB experiments from the command line.
//
//   bbstab solve --problem raydan:n=1000 --x0 const:-10 --rule bb1 --delta 2
//   bbstab bench experiments/raydan.spec
//   bbstab profile results/*/summary.csv --out profile.csv
//   bbstab check all

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbstab/harness/check.hpp"
#include "bbstab/harness/experiment.hpp"
#include "bbstab/harness/options.hpp"
#include "bbstab/harness/tables.hpp"

namespace {

using namespace bbstab;
using namespace bbstab::harness;

void report(const ExperimentResult& result) {
  write_summary_csv(std::cout, result.summary());
  auto warn = [](const std::string& solver, const Diagnostic& d) {
    if (d.passed) return;
    std::cerr << "diagnostic failed: " << (solver.empty() ? "" : solver + " ")
              << d.name << " measured " << format_double(d.measured)
              << " tolerance " << format_double(d.tolerance);
    if (!d.detail.empty()) std::cerr << " (" << d.detail << ")";
    std::cerr << '\n';
  };
  for (const Diagnostic& d : result.problem_diagnostics) warn("", d);
  for (const CellResult& cell : result.cells)
    for (const Diagnostic& d : cell.diagnostics) warn(cell.solver, d);
}

int finish(const ExperimentResult& result, const std::string& out_dir) {
  if (!out_dir.empty()) write_experiment(result, out_dir);
  report(result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barzilai-Borwein methods with step-length stabilization"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run one solver on one problem");
  std::string problem, matrix, rule = "bb1", delta = "inf", x0 = "zero", out;
  std::size_t maxit = SolverConfig{}.max_iterations;
  double tol = SolverConfig{}.rel_tol;
  std::uint64_t seed = 1;
  auto* problem_opt = solve->add_option(
      "--problem", problem,
      "counterexample[:n=N] | raydan:n=N | rosenbrock:n=N | diag:n=N | "
      "diag:values=a;b;...");
  auto* matrix_opt =
      solve->add_option("--matrix", matrix, "Matrix Market file (quadratic, b = Ae)");
  problem_opt->excludes(matrix_opt);
  solve->add_option("--rule", rule, "bb1 | bb2")->capture_default_str();
  solve->add_option("--delta", delta, "inf | <float> | auto:<c>")->capture_default_str();
  solve->add_option("--maxit", maxit, "Iteration limit")->capture_default_str();
  solve->add_option("--tol", tol, "Stop when |g| <= tol |g0|")->capture_default_str();
  solve->add_option("--x0", x0, "zero | const:<v> | vec:<v1>;<v2>;... | file:<path> | cycle")
      ->capture_default_str();
  solve->add_option("--out", out, "Directory for trace, summary and diagnostics CSV");
  solve->add_option("--seed", seed, "Seed for randomized diagnostics")->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Run an experiment spec file");
  std::string spec_path, bench_out;
  bench->add_option("spec", spec_path, "Experiment spec (key = value lines)")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--out", bench_out, "Override the spec's output directory");

  // profile
  auto* profile = app.add_subcommand("profile", "Performance profile from summary tables");
  std::vector<std::string> summaries;
  std::string profile_out;
  double tau_max = 10.0;
  std::size_t points = 91;
  profile->add_option("summaries", summaries, "summary.csv files")
      ->required()
      ->check(CLI::ExistingFile);
  profile->add_option("--tau-max", tau_max, "Largest ratio on the grid")->capture_default_str();
  profile->add_option("--points", points, "Grid points on [1, tau-max]")->capture_default_str();
  profile->add_option("--out", profile_out, "Output CSV (default stdout)");

  // check
  auto* check = app.add_subcommand("check", "Run the verification suite");
  std::string suite = "all";
  std::uint64_t check_seed = 1;
  check->add_option("suite", suite,
                    "all | gradients | stepsize | cycle | bounds | contraction | envelope")
      ->capture_default_str();
  check->add_option("--seed", check_seed, "Seed for random inputs")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      if (problem.empty() && matrix.empty())
        throw UsageError("solve needs --problem or --matrix");
      ExperimentSpec spec;
      spec.problem = problem;
      spec.matrix_path = matrix;
      spec.start = parse_start(x0);
      SolverConfig config;
      config.rule = parse_rule(rule);
      config.delta_policy = parse_delta(delta);
      config.max_iterations = maxit;
      if (!(tol > 0.0)) throw UsageError("--tol must be positive");
      config.rel_tol = tol;
      spec.configs.push_back(config);
      spec.seed = seed;
      return finish(run_experiment(spec), out);
    }
    if (*bench) {
      std::ifstream in(spec_path);
      if (!in) throw std::runtime_error("cannot open " + spec_path);
      ExperimentSpec spec = parse_experiment_spec(in);
      if (!bench_out.empty()) spec.out_dir = bench_out;
      return finish(run_experiment(spec), spec.out_dir);
    }
    if (*profile) {
      std::vector<SummaryRow> rows;
      for (const std::string& path : summaries) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        auto more = read_summary_csv(in);
        rows.insert(rows.end(), more.begin(), more.end());
      }
      const auto curves =
          performance_profile(outcomes_from_summary(rows), tau_grid(tau_max, points));
      if (profile_out.empty()) {
        write_profile_csv(std::cout, curves);
      } else {
        std::ofstream f(profile_out);
        if (!f) throw std::runtime_error("cannot write " + profile_out);
        write_profile_csv(f, curves);
      }
      return 0;
    }
    if (*check) {
      const auto reports = run_checks(suite, check_seed);
      write_check_json(std::cout, reports);
      return all_passed(reports) ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "bbstab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "bbstab: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
