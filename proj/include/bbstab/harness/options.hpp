#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bbstab/core.hpp"
#include "bbstab/sparse.hpp"

namespace bbstab::harness {

/// Bad command-line or spec-file input.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "inf" | "<float>" | "auto:<c>"
DeltaPolicy parse_delta(std::string_view text);
std::string format_delta(const DeltaPolicy& policy);

/// "bb1" | "bb2"
Rule parse_rule(std::string_view text);

/// Display label such as "bb1", "bb2stab(2)" or "bb1stab(auto:0.25)".
std::string solver_label(const SolverConfig& config);

struct StartSpec {
  enum class Kind { Zero, Constant, Vector, File, Cycle };
  Kind kind = Kind::Zero;
  double value = 0.0;
  std::vector<double> values;  // Kind::Vector
  std::string path;
};

/// "zero" | "const:<v>" | "vec:<v1>;<v2>;..." | "file:<path>" | "cycle". "cycle" starts from the
/// pair (-b, -a) in every coordinate and is only valid for the
/// counterexample problem.
StartSpec parse_start(std::string_view text);

enum class ProblemKind { Counterexample, Raydan, Rosenbrock, Diagonal, Matrix };

/// A problem plus how the harness should start and diagnose it.
struct ProblemInstance {
  ProblemKind kind;
  std::string label;  // used in summary tables
  std::shared_ptr<const Problem> problem;
  // For quadratics x1 = x0 - g0/|g0|_inf without a descent test.
  bool quadratic = false;
};

/// "counterexample[:n=<N>]" | "raydan:n=<N>" | "rosenbrock:n=<N>" |
/// "diag:n=<N>" (eigenvalues 1..N) | "diag:values=<v1>;<v2>;...".
ProblemInstance parse_problem(std::string_view text);

/// Sparse quadratic with b = A e; spectral bounds estimated by power
/// iteration and attached when the estimate converges.
ProblemInstance load_matrix_problem(const std::string& path);

/// Starting point(s) for `spec` on `instance`. `x1` is set only for "cycle".
struct StartPoints {
  Vector x0;
  std::optional<Vector> x1;
};
StartPoints make_start(const StartSpec& spec, const ProblemInstance& instance);

/// 17 significant digits, exact on round trip ("inf", "nan" included).
std::string format_double(double v);
/// Inverse of format_double; throws UsageError on malformed input.
double parse_double(std::string_view text);

}  // namespace bbstab::harness
