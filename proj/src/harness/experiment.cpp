#include "bbstab/harness/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <random>
#include <set>
#include <sstream>

#include "bbstab/oracles.hpp"

namespace bbstab::harness {
namespace {

constexpr std::size_t kCycleMaxPeriod = 8;
constexpr double kCycleTol = 1e-8;
constexpr double kAlphaTol = 1e-12;
constexpr double kContractionSlack = 1e-10;
constexpr double kGradientTol = 1e-6;
// Central differences of a long sum lose accuracy to rounding in f, roughly
// eps |f| / h, so the per-experiment check is limited to small problems.
constexpr std::size_t kGradientCheckMaxDim = 200;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_integer(const std::string& text, const std::string& key) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError(key + ": expected a non-negative integer, got '" + text + "'");
  return v;
}

ProblemInstance load_instance(const ExperimentSpec& spec) {
  if (!spec.matrix_path.empty()) return load_matrix_problem(spec.matrix_path);
  return parse_problem(spec.problem);
}

Diagnostic cycle_diagnostic(const SolveResult& result) {
  Diagnostic d{"cycle", true, 0.0, kCycleTol, "none"};
  if (result.iterates.size() < 3 * kCycleMaxPeriod) {
    d.detail = "too few iterates";
    return d;
  }
  const auto report =
      oracles::detect_cycle(result.iterates, kCycleMaxPeriod, kCycleTol);
  if (report.period) {
    d.measured = static_cast<double>(*report.period);
    d.detail = "period " + std::to_string(*report.period);
  }
  return d;
}

std::vector<Diagnostic> cell_diagnostics(const ProblemInstance& instance,
                                         const SolveResult& result) {
  std::vector<Diagnostic> out{check_step_cap(result), check_stab_count(result)};
  if (const auto& bounds = instance.problem->spectral_bounds()) {
    out.push_back(check_alpha_bounds(result, *bounds, kAlphaTol));
    out.push_back(check_contraction(result, *bounds, kContractionSlack));
    out.push_back(check_absorption(result));
  }
  if (instance.kind == ProblemKind::Counterexample)
    out.push_back(cycle_diagnostic(result));
  return out;
}

Diagnostic gradient_diagnostic(const Problem& problem, const Vector& x0,
                               std::uint64_t seed) {
  Diagnostic d{"gradient_fd", true, 0.0, kGradientTol, ""};
  if (problem.dimension() > kGradientCheckMaxDim) {
    d.detail = "skipped (n > " + std::to_string(kGradientCheckMaxDim) + ")";
    return d;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  Vector x = x0;
  for (double& xi : x) xi += jitter(rng);
  try {
    const auto check = oracles::fd_gradient_check(problem, x);
    d.measured = check.max_rel_error;
    d.passed = check.max_rel_error <= kGradientTol;
    d.detail = "worst index " + std::to_string(check.worst_index);
  } catch (const oracles::NonFiniteStencil& e) {
    d.passed = false;
    d.detail = e.what();
  }
  return d;
}

SolveResult solve_cell(const ProblemInstance& instance, const StartPoints& start,
                       const SolverConfig& config) {
  const Problem& problem = *instance.problem;
  if (start.x1) return run_from_pair(problem, start.x0, *start.x1, config);
  if (instance.quadratic) return run_direct_start(problem, start.x0, config);
  return run(problem, start.x0, config);
}

std::string csv_field(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  return text;
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::istream& in) {
  ExperimentSpec spec;
  std::vector<std::pair<Rule, DeltaPolicy>> solvers;
  std::optional<std::size_t> maxit;
  std::optional<double> tol;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("spec line " + std::to_string(line_no) +
                       ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "problem") {
      spec.problem = value;
    } else if (key == "matrix") {
      spec.matrix_path = value;
    } else if (key == "x0") {
      spec.start = parse_start(value);
    } else if (key == "solver") {
      std::istringstream words(value);
      std::string rule, delta, extra;
      if (!(words >> rule >> delta) || (words >> extra))
        throw UsageError("spec line " + std::to_string(line_no) +
                         ": solver = <rule> <delta>");
      solvers.emplace_back(parse_rule(rule), parse_delta(delta));
    } else if (key == "maxit") {
      maxit = parse_integer<std::size_t>(value, key);
    } else if (key == "tol") {
      tol = parse_double(value);
      if (!(*tol > 0.0)) throw UsageError("tol must be positive");
    } else if (key == "out") {
      spec.out_dir = value;
    } else if (key == "seed") {
      spec.seed = parse_integer<std::uint64_t>(value, key);
    } else {
      throw UsageError("spec line " + std::to_string(line_no) +
                       ": unknown key '" + key + "'");
    }
  }
  if (spec.problem.empty() == spec.matrix_path.empty())
    throw UsageError("spec needs exactly one of problem and matrix");
  if (solvers.empty()) throw UsageError("spec needs at least one solver line");
  for (const auto& [rule, delta] : solvers) {
    SolverConfig config;
    config.rule = rule;
    config.delta_policy = delta;
    if (maxit) config.max_iterations = *maxit;
    if (tol) config.rel_tol = *tol;
    spec.configs.push_back(config);
  }
  return spec;
}

std::vector<SummaryRow> ExperimentResult::summary() const {
  std::vector<SummaryRow> rows;
  for (const CellResult& cell : cells)
    rows.push_back(summarize(problem, cell.solver, n, cell.result));
  return rows;
}

bool ExperimentResult::diagnostics_passed() const {
  auto ok = [](const Diagnostic& d) { return d.passed; };
  if (!std::all_of(problem_diagnostics.begin(), problem_diagnostics.end(), ok))
    return false;
  return std::all_of(cells.begin(), cells.end(), [&](const CellResult& c) {
    return std::all_of(c.diagnostics.begin(), c.diagnostics.end(), ok);
  });
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.configs.empty())
    throw UsageError("experiment needs at least one solver config");
  const ProblemInstance instance = load_instance(spec);
  const StartPoints start = make_start(spec.start, instance);

  ExperimentResult out;
  out.problem = instance.label;
  out.n = instance.problem->dimension();
  out.problem_diagnostics.push_back(
      gradient_diagnostic(*instance.problem, start.x0, spec.seed));

  const std::size_t cells = spec.configs.size();
  out.cells.resize(cells);
  std::vector<std::exception_ptr> errors(cells);
  const bool keep_iterates = instance.kind == ProblemKind::Counterexample;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < cells; ++i) {
    try {
      SolverConfig config = spec.configs[i];
      config.keep_iterates = config.keep_iterates || keep_iterates;
      CellResult& cell = out.cells[i];
      cell.solver = solver_label(config);
      cell.config = config;
      cell.result = solve_cell(instance, start, config);
      cell.diagnostics = cell_diagnostics(instance, cell.result);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string file_stem(const std::string& label) {
  std::string stem;
  for (char ch : label) {
    const auto u = static_cast<unsigned char>(ch);
    if (std::isalnum(u) || ch == '.' || ch == '-')
      stem += ch;
    else if (!stem.empty() && stem.back() != '_')
      stem += '_';
  }
  while (!stem.empty() && stem.back() == '_') stem.pop_back();
  return stem.empty() ? "solver" : stem;
}

void write_experiment(const ExperimentResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  std::set<std::string> used;
  for (const CellResult& cell : result.cells) {
    std::string stem = file_stem(cell.solver);
    for (int suffix = 2; used.count(stem); ++suffix)
      stem = file_stem(cell.solver) + "_" + std::to_string(suffix);
    used.insert(stem);
    write_trace_csv(cell.result, (dir / ("trace_" + stem + ".csv")).string());
  }

  auto open = [](const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
  };

  std::ofstream summary = open(dir / "summary.csv");
  write_summary_csv(summary, result.summary());
  if (!summary) throw std::runtime_error("error writing summary.csv");

  std::ofstream diag = open(dir / "diagnostics.csv");
  diag << "problem,solver,check,passed,measured,tolerance,detail\n";
  auto row = [&](const std::string& solver, const Diagnostic& d) {
    diag << result.problem << ',' << solver << ',' << d.name << ','
         << (d.passed ? "pass" : "fail") << ',' << format_double(d.measured)
         << ',' << format_double(d.tolerance) << ',' << csv_field(d.detail)
         << '\n';
  };
  for (const Diagnostic& d : result.problem_diagnostics) row("", d);
  for (const CellResult& cell : result.cells)
    for (const Diagnostic& d : cell.diagnostics) row(cell.solver, d);
  if (!diag) throw std::runtime_error("error writing diagnostics.csv");
}

}  // namespace bbstab::harness
