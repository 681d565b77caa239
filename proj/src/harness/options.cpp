#include "bbstab/harness/options.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "bbstab/problems.hpp"

namespace bbstab::harness {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::size_t parse_size(std::string_view text, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v == 0)
    throw UsageError(std::string(what) + ": expected a positive integer, got '" +
                     std::string(text) + "'");
  return v;
}

// "k1=v1,k2=v2" -> map
std::map<std::string, std::string, std::less<>> parse_params(
    std::string_view text) {
  std::map<std::string, std::string, std::less<>> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{}
                                           : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("problem parameter '" + std::string(item) +
                       "' is not key=value");
    out.emplace(std::string(trim(item.substr(0, eq))),
                std::string(trim(item.substr(eq + 1))));
  }
  return out;
}

std::size_t size_param(
    const std::map<std::string, std::string, std::less<>>& params,
    std::string_view key, std::optional<std::size_t> fallback) {
  const auto it = params.find(key);
  if (it == params.end()) {
    if (fallback) return *fallback;
    throw UsageError("missing problem parameter '" + std::string(key) + "'");
  }
  return parse_size(it->second, key);
}

std::shared_ptr<const Problem> share(Problem p) {
  return std::make_shared<const Problem>(std::move(p));
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 40> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw UsageError("expected a number, got '" + std::string(text) + "'");
  return v;
}

DeltaPolicy parse_delta(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "infinity") return DeltaPolicy::infinite();
  if (text.starts_with("auto:")) {
    const double c = parse_double(text.substr(5));
    if (!(c > 0.0) || !std::isfinite(c))
      throw UsageError("auto:<c> needs a positive finite c");
    return DeltaPolicy::adaptive(c);
  }
  const double d = parse_double(text);
  if (!(d > 0.0)) throw UsageError("delta must be positive");
  return DeltaPolicy::fixed(d);
}

std::string format_delta(const DeltaPolicy& policy) {
  // Shortest text that parses back to the same double: labels stay readable.
  auto shortest = [](double v) {
    std::array<char, 40> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
  };
  switch (policy.kind) {
    case DeltaPolicy::Kind::Infinite: return "inf";
    case DeltaPolicy::Kind::Fixed: return shortest(policy.value);
    case DeltaPolicy::Kind::Adaptive:
      return "auto:" + shortest(policy.value);
  }
  return "?";
}

Rule parse_rule(std::string_view text) {
  text = trim(text);
  if (text == "bb1" || text == "BB1") return Rule::BB1;
  if (text == "bb2" || text == "BB2") return Rule::BB2;
  throw UsageError("rule must be bb1 or bb2, got '" + std::string(text) + "'");
}

std::string solver_label(const SolverConfig& config) {
  std::string label(to_string(config.rule));
  if (config.delta_policy.kind == DeltaPolicy::Kind::Infinite) return label;
  return label + "stab(" + format_delta(config.delta_policy) + ")";
}

StartSpec parse_start(std::string_view text) {
  text = trim(text);
  StartSpec spec;
  if (text == "zero") return spec;
  if (text == "cycle") {
    spec.kind = StartSpec::Kind::Cycle;
    return spec;
  }
  if (text.starts_with("const:")) {
    spec.kind = StartSpec::Kind::Constant;
    spec.value = parse_double(text.substr(6));
    if (!std::isfinite(spec.value)) throw UsageError("x0 must be finite");
    return spec;
  }
  if (text.starts_with("vec:")) {
    spec.kind = StartSpec::Kind::Vector;
    std::string_view rest = text.substr(4);
    for (;;) {
      const auto semi = rest.find(';');
      const double v = parse_double(trim(rest.substr(0, semi)));
      if (!std::isfinite(v)) throw UsageError("x0 must be finite");
      spec.values.push_back(v);
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
    }
    return spec;
  }
  if (text.starts_with("file:")) {
    spec.kind = StartSpec::Kind::File;
    spec.path = std::string(text.substr(5));
    if (spec.path.empty()) throw UsageError("file:<path> needs a path");
    return spec;
  }
  throw UsageError("x0 must be zero, const:<v>, vec:<values>, file:<path> or cycle");
}

ProblemInstance parse_problem(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  const auto params = parse_params(
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));

  if (name == "counterexample") {
    const std::size_t n = size_param(params, "n", 1);
    return {ProblemKind::Counterexample,
            "counterexample_n" + std::to_string(n),
            share(problems::counterexample(n)), false};
  }
  if (name == "raydan") {
    const std::size_t n = size_param(params, "n", std::nullopt);
    return {ProblemKind::Raydan, "raydan_n" + std::to_string(n),
            share(problems::raydan(n)), false};
  }
  if (name == "rosenbrock") {
    const std::size_t n = size_param(params, "n", std::nullopt);
    if (n % 2 != 0) throw UsageError("rosenbrock needs an even n");
    return {ProblemKind::Rosenbrock, "rosenbrock_n" + std::to_string(n),
            share(problems::extended_rosenbrock(n)), false};
  }
  if (name == "diag") {
    Vector eig;
    std::string label;
    if (const auto it = params.find("values"); it != params.end()) {
      std::string_view rest = it->second;
      while (!rest.empty()) {
        const auto semi = rest.find(';');
        const auto item = trim(rest.substr(0, semi));
        if (!item.empty()) eig.push_back(parse_double(item));
        rest = semi == std::string_view::npos ? std::string_view{}
                                              : rest.substr(semi + 1);
      }
      label = "diag_values" + std::to_string(eig.size());
    } else {
      const std::size_t n = size_param(params, "n", std::nullopt);
      for (std::size_t i = 1; i <= n; ++i) eig.push_back(static_cast<double>(i));
      label = "diag_n" + std::to_string(n);
    }
    try {
      return {ProblemKind::Diagonal, label,
              share(problems::diagonal_quadratic(eig)), true};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("unknown problem '" + name + "'");
}

ProblemInstance load_matrix_problem(const std::string& path) {
  sparse::SparseMatrix a = sparse::read_matrix_market(path);
  if (!a.is_symmetric()) throw UsageError("matrix " + path + " is not symmetric");
  const auto bounds = sparse::estimate_spectral_bounds(a, 20000, 1e-12);
  std::string label = path;
  if (const auto slash = label.find_last_of('/'); slash != std::string::npos)
    label = label.substr(slash + 1);
  if (label.ends_with(".mtx")) label.resize(label.size() - 4);
  auto quad = sparse::build_quadratic(std::move(a), label);
  Problem problem = std::move(quad.problem);
  if (bounds) problem.set_spectral_bounds(*bounds);
  return {ProblemKind::Matrix, label, share(std::move(problem)), true};
}

StartPoints make_start(const StartSpec& spec, const ProblemInstance& instance) {
  const std::size_t n = instance.problem->dimension();
  StartPoints out;
  switch (spec.kind) {
    case StartSpec::Kind::Zero: out.x0.assign(n, 0.0); break;
    case StartSpec::Kind::Constant: out.x0.assign(n, spec.value); break;
    case StartSpec::Kind::Vector:
      out.x0 = spec.values;
      if (out.x0.size() != n)
        throw UsageError("x0 has " + std::to_string(out.x0.size()) +
                         " values, problem needs " + std::to_string(n));
      break;
    case StartSpec::Kind::File: {
      std::ifstream in(spec.path);
      if (!in) throw UsageError("cannot open x0 file " + spec.path);
      std::string tok;
      while (in >> tok) out.x0.push_back(parse_double(tok));
      if (out.x0.size() != n)
        throw UsageError("x0 file has " + std::to_string(out.x0.size()) +
                         " values, problem needs " + std::to_string(n));
      break;
    }
    case StartSpec::Kind::Cycle: {
      if (instance.kind != ProblemKind::Counterexample)
        throw UsageError("x0 'cycle' only applies to the counterexample");
      const auto& c = problems::counterexample_constants();
      out.x0.assign(n, -c.b);
      out.x1 = Vector(n, -c.a);
      break;
    }
  }
  return out;
}

}  // namespace bbstab::harness
