#pragma once

#include <cstddef>
#include <span>

#include "bbstab/core.hpp"

namespace bbstab::problems {

/// Constants of the piecewise univariate function on which plain BB cycles
/// through {-b, -a, b, a}. Computed from sqrt(5) in double precision.
struct CounterexampleConstants {
  double sqrt5;
  double a;    // sqrt5 - 1
  double b;    // sqrt5 + 3
  double c1;   // (3 sqrt5 + 8) / 4
  double c2;   // -(5 sqrt5 + 11) / 32
  double f_a;  // c1 a^2 / 2 + c2 a^4 / 4
};

const CounterexampleConstants& counterexample_constants();

/// Quadratic tails for |x| > a joined C^2 to c1 x^2/2 + c2 x^4/4 on [-a, a].
double counterexample_value(double x);
double counterexample_grad(double x);

/// Sum of n independent copies of the univariate counterexample. Spectral
/// bounds [1/2, c1].
Problem counterexample(std::size_t n = 1);

/// Raydan's Strictly Convex 2: f = sum_i i (exp(x_i) - x_i) / 10.
/// exp overflow is left to propagate.
double raydan_value(std::span<const double> x);
void raydan_grad(std::span<const double> x, std::span<double> g);
Problem raydan(std::size_t n);

/// Separable-pairs Rosenbrock: sum over pairs of
/// 100 (x_{2i} - x_{2i-1}^2)^2 + (1 - x_{2i-1})^2. Throws
/// std::invalid_argument for odd lengths.
double extended_rosenbrock_value(std::span<const double> x);
void extended_rosenbrock_grad(std::span<const double> x, std::span<double> g);
Problem extended_rosenbrock(std::size_t n);

/// f = x' diag(lambda) x / 2 - b'x with b = diag(lambda) e; minimizer e and
/// exact spectral bounds. Throws std::invalid_argument unless every
/// eigenvalue is positive and finite.
Problem diagonal_quadratic(std::span<const double> eigenvalues);

}  // namespace bbstab::problems
