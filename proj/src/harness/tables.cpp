#include "bbstab/harness/tables.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "bbstab/harness/options.hpp"

namespace bbstab::harness {
namespace {

constexpr std::string_view kTraceHeader = "k,g_norm,s_norm,alpha,branch,region,q_k";
constexpr std::string_view kSummaryHeader =
    "problem,n,solver,status,iterations,final_gnorm,delta,stab_steps,"
    "last_stab_iter";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::size_t parse_index(const std::string& text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError("expected an integer, got '" + text + "'");
  return v;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << kTraceHeader << '\n';
  for (const TraceRecord& r : trace) {
    out << r.k << ',' << format_double(r.g_norm) << ','
        << format_double(r.s_norm) << ',' << format_double(r.alpha) << ','
        << to_string(r.branch) << ',';
    if (r.region) out << to_string(*r.region);
    out << ',';
    if (r.q_k) out << format_double(*r.q_k);
    out << '\n';
  }
}

void write_trace_csv(const SolveResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_trace_csv(out, result.trace);
  if (!out) throw std::runtime_error("error writing " + path);
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("trace csv: missing header");
  strip_cr(line);
  if (line != kTraceHeader) throw UsageError("trace csv: unexpected header");
  std::vector<TraceRecord> trace;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 7) throw UsageError("trace csv: expected 7 fields: " + line);
    TraceRecord r;
    r.k = parse_index(f[0]);
    r.g_norm = parse_double(f[1]);
    r.s_norm = parse_double(f[2]);
    r.alpha = parse_double(f[3]);
    const auto branch = parse_branch(f[4]);
    if (!branch) throw UsageError("trace csv: unknown branch '" + f[4] + "'");
    r.branch = *branch;
    if (!f[5].empty()) {
      r.region = parse_region(f[5]);
      if (!r.region) throw UsageError("trace csv: unknown region '" + f[5] + "'");
    }
    if (!f[6].empty()) r.q_k = parse_double(f[6]);
    trace.push_back(r);
  }
  return trace;
}

SummaryRow summarize(const std::string& problem, const std::string& solver,
                     std::size_t n, const SolveResult& result) {
  return SummaryRow{problem,
                    n,
                    solver,
                    result.status(),
                    result.iterations,
                    result.final_g_norm,
                    result.delta_used,
                    result.stab_step_count,
                    result.last_stab_iteration};
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const SummaryRow& r : rows) {
    out << r.problem << ',' << r.n << ',' << r.solver << ','
        << to_string(r.status) << ',' << r.iterations << ','
        << format_double(r.final_gnorm) << ',' << format_double(r.delta) << ','
        << r.stab_steps << ',';
    if (r.last_stab_iter) out << *r.last_stab_iter;
    out << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("summary csv: missing header");
  strip_cr(line);
  if (line != kSummaryHeader) throw UsageError("summary csv: unexpected header");
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 9)
      throw UsageError("summary csv: expected 9 fields: " + line);
    SummaryRow r;
    r.problem = f[0];
    r.n = parse_index(f[1]);
    r.solver = f[2];
    const auto status = parse_status(f[3]);
    if (!status) throw UsageError("summary csv: unknown status '" + f[3] + "'");
    r.status = *status;
    r.iterations = parse_index(f[4]);
    r.final_gnorm = parse_double(f[5]);
    r.delta = parse_double(f[6]);
    r.stab_steps = parse_index(f[7]);
    if (!f[8].empty()) r.last_stab_iter = parse_index(f[8]);
    rows.push_back(r);
  }
  return rows;
}

OutcomeTable outcomes_from_summary(const std::vector<SummaryRow>& rows) {
  OutcomeTable table;
  for (const SummaryRow& r : rows)
    table[r.solver][r.problem] =
        ProblemOutcome{r.status == Status::Converged, r.iterations};
  return table;
}

std::vector<ProfileCurve> performance_profile(const OutcomeTable& results,
                                              const std::vector<double>& taus) {
  std::set<std::string> problems;
  for (const auto& [solver, per_problem] : results)
    for (const auto& [problem, outcome] : per_problem) problems.insert(problem);
  if (problems.empty())
    throw std::invalid_argument("performance_profile: no problems");
  for (const auto& [solver, per_problem] : results)
    if (per_problem.size() != problems.size())
      throw std::invalid_argument("performance_profile: solver '" + solver +
                                  "' did not attempt every problem");

  constexpr double kUnsolved = std::numeric_limits<double>::infinity();
  std::map<std::string, std::size_t> best;
  for (const std::string& p : problems) {
    std::size_t b = std::numeric_limits<std::size_t>::max();
    for (const auto& [solver, per_problem] : results) {
      const ProblemOutcome& o = per_problem.at(p);
      if (o.solved) b = std::min(b, o.iterations);
    }
    best[p] = b;
  }

  std::vector<ProfileCurve> curves;
  const double total = static_cast<double>(problems.size());
  for (const auto& [solver, per_problem] : results) {
    std::vector<double> ratios;
    for (const std::string& p : problems) {
      const ProblemOutcome& o = per_problem.at(p);
      if (!o.solved) {
        ratios.push_back(kUnsolved);
        continue;
      }
      // A zero-iteration solve is the best possible; avoid 0/0.
      const double b = static_cast<double>(std::max<std::size_t>(best[p], 1));
      ratios.push_back(static_cast<double>(std::max<std::size_t>(o.iterations, 1)) / b);
    }
    ProfileCurve curve{solver, {}};
    for (double tau : taus) {
      const auto within = std::count_if(ratios.begin(), ratios.end(),
                                        [tau](double r) { return r <= tau; });
      curve.points.emplace_back(tau, static_cast<double>(within) / total);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<double> tau_grid(double tau_max, std::size_t n) {
  if (n < 2 || !(tau_max > 1.0))
    throw std::invalid_argument("tau_grid: need n >= 2 and tau_max > 1");
  std::vector<double> taus(n);
  for (std::size_t i = 0; i < n; ++i)
    taus[i] = 1.0 + (tau_max - 1.0) * static_cast<double>(i) /
                        static_cast<double>(n - 1);
  return taus;
}

void write_profile_csv(std::ostream& out,
                       const std::vector<ProfileCurve>& curves) {
  out << "solver,tau,fraction\n";
  for (const ProfileCurve& c : curves)
    for (const auto& [tau, fraction] : c.points)
      out << c.solver << ',' << format_double(tau) << ','
          << format_double(fraction) << '\n';
}

}  // namespace bbstab::harness
