#include "bbstab/harness/check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

#include "json.hpp"

#include "bbstab/harness/options.hpp"
#include "bbstab/oracles.hpp"
#include "bbstab/problems.hpp"
#include "bbstab/solver.hpp"
#include "bbstab/stepsize.hpp"

namespace bbstab::harness {
namespace {

using Reports = std::vector<CheckReport>;

constexpr double kGradientTol = 1e-6;
constexpr double kOracleTol = 1e-6;
constexpr double kAlphaTol = 1e-12;
constexpr double kContractionSlack = 1e-10;
constexpr double kCycleTol = 1e-8;
constexpr double kMaxEnvelopeC = 0.99;
constexpr double kMaxEnvelopeResidual = 0.5;

Vector ones(std::size_t n) { return Vector(n, 1.0); }

Vector iota_values(std::size_t n) {
  Vector v(n);
  std::iota(v.begin(), v.end(), 1.0);
  return v;
}

Vector uniform_point(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector x(n);
  for (double& xi : x) xi = u(rng);
  return x;
}

Diagnostic fd_diagnostic(const std::string& name, const Problem& problem,
                         const Vector& x) {
  Diagnostic d{name, true, 0.0, kGradientTol, ""};
  try {
    const auto check = oracles::fd_gradient_check(problem, x);
    d.measured = check.max_rel_error;
    d.passed = check.max_rel_error <= kGradientTol;
    d.detail = "n=" + std::to_string(x.size()) + " worst index " +
               std::to_string(check.worst_index);
  } catch (const oracles::NonFiniteStencil& e) {
    d.passed = false;
    d.detail = e.what();
  }
  return d;
}

void gradients(Reports& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto add = [&](Diagnostic d) { out.push_back({"gradients", std::move(d)}); };

  add(fd_diagnostic("counterexample_random", problems::counterexample(4),
                    uniform_point(rng, 4, -6.0, 6.0)));
  const auto& c = problems::counterexample_constants();
  add(fd_diagnostic("counterexample_at_a", problems::counterexample(1),
                    Vector{c.a}));
  add(fd_diagnostic("raydan", problems::raydan(50),
                    uniform_point(rng, 50, -1.0, 1.0)));
  add(fd_diagnostic("raydan_at_zero", problems::raydan(5), Vector(5, 0.0)));
  add(fd_diagnostic("rosenbrock", problems::extended_rosenbrock(10),
                    uniform_point(rng, 10, -2.0, 2.0)));
  add(fd_diagnostic("diag_1_10", problems::diagonal_quadratic(iota_values(10)),
                    uniform_point(rng, 10, -5.0, 5.0)));
}

void stepsize(Reports& out, std::uint64_t seed) {
  constexpr std::size_t kPairs = 1000;
  constexpr std::size_t kDim = 5;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  std::uniform_real_distribution<double> curvature(0.1, 10.0);

  double worst1 = 0.0, worst2 = 0.0, order_violation = 0.0;
  for (std::size_t p = 0; p < kPairs; ++p) {
    Vector s(kDim), y(kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
      s[i] = comp(rng);
      y[i] = curvature(rng) * s[i];
    }
    const StepPair pair{s, y};
    const auto lsq = oracles::stepsize_oracle(pair);
    const double a1 = *stepsize::bb1(pair);
    const double a2 = *stepsize::bb2(pair);
    worst1 = std::max(worst1, std::abs(lsq.alpha1 - a1) / std::abs(a1));
    worst2 = std::max(worst2, std::abs(lsq.alpha2 - a2) / std::abs(a2));
    order_violation = std::max(order_violation, (a2 - a1) / a1);
  }
  const std::string pairs = std::to_string(kPairs) + " pairs";
  out.push_back({"stepsize", {"oracle_bb1", worst1 <= kOracleTol, worst1, kOracleTol, pairs}});
  out.push_back({"stepsize", {"oracle_bb2", worst2 <= kOracleTol, worst2, kOracleTol, pairs}});
  // Cauchy-Schwarz: bb2 <= bb1 whenever s'y > 0.
  out.push_back({"stepsize",
                 {"bb1_ge_bb2", order_violation <= 1e-15, order_violation,
                  1e-15, pairs}});
}

void cycle(Reports& out, std::uint64_t) {
  const auto& c = problems::counterexample_constants();
  const Problem f = problems::counterexample(1);
  const Vector x0{-c.b}, x1{-c.a};

  SolverConfig plain;
  plain.rule = Rule::BB1;
  plain.max_iterations = 200;
  plain.keep_iterates = true;
  const SolveResult bb = reference_bb_run_from_pair(f, x0, x1, plain);
  const auto report = oracles::detect_cycle(bb.iterates, 8, kCycleTol);
  Diagnostic period{"bb1_period", report.period == std::size_t{4},
                    report.period ? static_cast<double>(*report.period) : 0.0,
                    4.0, "max deviation " + format_double(report.max_deviation)};
  out.push_back({"cycle", period});
  out.push_back({"cycle",
                 {"bb1_not_converged", bb.status() != Status::Converged,
                  bb.final_g_norm, 0.0, std::string(to_string(bb.status()))}});

  SolverConfig stab = plain;
  stab.delta_policy = DeltaPolicy::fixed(1.0);
  stab.max_iterations = 500;
  stab.rel_tol = 1e-11;
  const SolveResult cured = run_from_pair(f, x0, x1, stab);
  out.push_back({"cycle",
                 {"bb1stab_converges",
                  cured.status() == Status::Converged &&
                      std::abs(cured.final_x[0]) <= 1e-8,
                  std::abs(cured.final_x[0]), 1e-8,
                  std::to_string(cured.iterations) + " iterations"}});
}

SolverConfig quad_config(Rule rule, DeltaPolicy delta) {
  SolverConfig config;
  config.rule = rule;
  config.delta_policy = delta;
  config.rel_tol = 1e-10;
  config.max_iterations = 10000;
  return config;
}

void bounds(Reports& out, std::uint64_t seed) {
  const Problem diag = problems::diagonal_quadratic(iota_values(10));
  const Vector x0(10, 0.0);
  for (Rule rule : {Rule::BB1, Rule::BB2}) {
    for (DeltaPolicy delta : {DeltaPolicy::infinite(), DeltaPolicy::adaptive(0.25)}) {
      const SolverConfig config = quad_config(rule, delta);
      const SolveResult r = run_direct_start(diag, x0, config);
      const std::string label = "diag_1_10:" + solver_label(config);
      Diagnostic d = check_alpha_bounds(r, *diag.spectral_bounds(), kAlphaTol);
      d.name = label + ":alpha_bounds";
      out.push_back({"bounds", d});
      Diagnostic cap = check_step_cap(r);
      cap.name = label + ":step_cap";
      out.push_back({"bounds", cap});
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eig(1.0, 100.0);
  Diagnostic worst{"random_diag:alpha_bounds", true, 0.0, kAlphaTol, "20 problems"};
  for (int p = 0; p < 20; ++p) {
    Vector lambda(10);
    for (double& l : lambda) l = eig(rng);
    const Problem q = problems::diagonal_quadratic(lambda);
    const Rule rule = p % 2 == 0 ? Rule::BB1 : Rule::BB2;
    const SolveResult r = run_direct_start(
        q, Vector(10, 0.0), quad_config(rule, DeltaPolicy::adaptive(0.25)));
    const Diagnostic d = check_alpha_bounds(r, *q.spectral_bounds(), kAlphaTol);
    if (d.measured >= worst.measured) {
      worst.measured = d.measured;
      if (!d.passed) worst.detail = "problem " + std::to_string(p) + " " + d.detail;
    }
    worst.passed = worst.passed && d.passed;
  }
  out.push_back({"bounds", worst});
}

void contraction(Reports& out, std::uint64_t) {
  const Problem diag = problems::diagonal_quadratic(iota_values(10));
  const SpectralBounds& b = *diag.spectral_bounds();
  const Vector x0(10, -99.0);
  const double delta = 1e-2 * 100.0 * std::sqrt(10.0);  // 1e-2 |x0 - e|
  for (Rule rule : {Rule::BB1, Rule::BB2}) {
    const SolverConfig config = quad_config(rule, DeltaPolicy::fixed(delta));
    const SolveResult r = run_direct_start(diag, x0, config);
    const std::string label = solver_label(config);
    const auto omega3 = std::count_if(
        r.trace.begin(), r.trace.end(), [](const TraceRecord& t) {
          return t.region && in_omega3(*t.region);
        });
    out.push_back({"contraction",
                   {label + ":starts_in_omega3", omega3 > 0,
                    static_cast<double>(omega3), 1.0, "records in Omega3"}});
    Diagnostic c = check_contraction(r, b, kContractionSlack);
    c.name = label + ":contraction";
    out.push_back({"contraction", c});
    Diagnostic a = check_absorption(r);
    a.name = label + ":absorption";
    out.push_back({"contraction", a});
  }
}

void envelope(Reports& out, std::uint64_t) {
  const Problem diag = problems::diagonal_quadratic(iota_values(10));
  const Vector x0(10, 0.0);
  const Vector e = ones(10);
  for (Rule rule : {Rule::BB1, Rule::BB2}) {
    SolverConfig config = quad_config(rule, DeltaPolicy::adaptive(0.25));
    config.keep_iterates = true;
    const SolveResult r = run_direct_start(diag, x0, config);
    std::vector<double> errors;
    for (const Vector& x : r.iterates) {
      Vector d(x.size());
      kernels::sub(x, e, d);
      errors.push_back(kernels::nrm2(d));
    }
    const auto fit = oracles::fit_rlinear_envelope(errors);
    const std::string label = solver_label(config);
    const std::string detail = "gamma " + format_double(fit.gamma) + " over " +
                               std::to_string(fit.points) + " iterates";
    out.push_back({"envelope",
                   {label + ":rate", fit.r_linear && fit.c <= kMaxEnvelopeC,
                    fit.c, kMaxEnvelopeC, detail}});
    out.push_back({"envelope",
                   {label + ":residual", fit.residual <= kMaxEnvelopeResidual,
                    fit.residual, kMaxEnvelopeResidual, detail}});
  }
}

using SuiteFn = std::function<void(Reports&, std::uint64_t)>;

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> suites{
      {"gradients", gradients}, {"stepsize", stepsize},
      {"cycle", cycle},         {"bounds", bounds},
      {"contraction", contraction}, {"envelope", envelope}};
  return suites;
}

}  // namespace

const std::vector<std::string>& check_suites() {
  static const std::vector<std::string> names{
      "gradients", "stepsize", "cycle", "bounds", "contraction", "envelope"};
  return names;
}

std::vector<CheckReport> run_checks(std::string_view selector,
                                    std::uint64_t seed) {
  Reports out;
  if (selector == "all") {
    for (const std::string& name : check_suites()) registry().at(name)(out, seed);
    return out;
  }
  const auto it = registry().find(selector);
  if (it == registry().end())
    throw UsageError("unknown check suite '" + std::string(selector) + "'");
  it->second(out, seed);
  return out;
}

void write_check_json(std::ostream& out, const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports) {
    const Diagnostic& d = r.diagnostic;
    nlohmann::json line{{"suite", r.suite},         {"check", d.name},
                        {"passed", d.passed},       {"measured", d.measured},
                        {"tolerance", d.tolerance}, {"detail", d.detail}};
    out << line.dump() << '\n';
  }
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.diagnostic.passed; });
}

}  // namespace bbstab::harness
