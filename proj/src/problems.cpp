#include "bbstab/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "bbstab/kernels.hpp"

namespace bbstab::problems {
namespace {

using Index = std::int64_t;

CounterexampleConstants make_constants() {
  CounterexampleConstants c{};
  c.sqrt5 = std::sqrt(5.0);
  c.a = c.sqrt5 - 1.0;
  c.b = c.sqrt5 + 3.0;
  c.c1 = (3.0 * c.sqrt5 + 8.0) / 4.0;
  c.c2 = -(5.0 * c.sqrt5 + 11.0) / 32.0;
  const double a2 = c.a * c.a;
  c.f_a = c.c1 * a2 / 2.0 + c.c2 * a2 * a2 / 4.0;
  return c;
}

void require_even(std::size_t n) {
  if (n % 2 != 0)
    throw std::invalid_argument("extended Rosenbrock needs an even dimension");
}

}  // namespace

const CounterexampleConstants& counterexample_constants() {
  static const CounterexampleConstants constants = make_constants();
  return constants;
}

double counterexample_value(double x) {
  const auto& c = counterexample_constants();
  if (x < -c.a) {
    const double t = x + c.a;
    return 0.25 * t * t - (c.sqrt5 + 1.0) * t + c.f_a;
  }
  if (x > c.a) {
    const double t = x - c.a;
    return 0.25 * t * t + (c.sqrt5 + 1.0) * t + c.f_a;
  }
  const double x2 = x * x;
  return c.c1 / 2.0 * x2 + c.c2 / 4.0 * x2 * x2;
}

double counterexample_grad(double x) {
  const auto& c = counterexample_constants();
  if (x < -c.a) return 0.5 * (x + c.a) - c.sqrt5 - 1.0;
  if (x > c.a) return 0.5 * (x - c.a) + c.sqrt5 + 1.0;
  return c.c1 * x + c.c2 * x * x * x;
}

Problem counterexample(std::size_t n) {
  const auto& c = counterexample_constants();
  Problem p(
      "counterexample", n,
      [](std::span<const double> x) {
        double f = 0.0;
        for (double xi : x) f += counterexample_value(xi);
        return f;
      },
      [](std::span<const double> x, std::span<double> g) {
        for (std::size_t i = 0; i < x.size(); ++i)
          g[i] = counterexample_grad(x[i]);
      });
  p.set_minimizer(Vector(n, 0.0));
  p.set_spectral_bounds(SpectralBounds(0.5, c.c1));
  return p;
}

double raydan_value(std::span<const double> x) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = static_cast<double>(i + 1);
    f += w * (std::exp(x[i]) - x[i]) / 10.0;
  }
  return f;
}

void raydan_grad(std::span<const double> x, std::span<double> g) {
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static) \
    if (x.size() >= kernels::kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const double w = static_cast<double>(u + 1);
    g[u] = w * (std::exp(x[u]) - 1.0) / 10.0;
  }
}

Problem raydan(std::size_t n) {
  Problem p("raydan", n, raydan_value, raydan_grad);
  p.set_minimizer(Vector(n, 0.0));
  return p;
}

double extended_rosenbrock_value(std::span<const double> x) {
  require_even(x.size());
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); i += 2) {
    const double t1 = x[i + 1] - x[i] * x[i];
    const double t2 = 1.0 - x[i];
    f += 100.0 * t1 * t1 + t2 * t2;
  }
  return f;
}

void extended_rosenbrock_grad(std::span<const double> x, std::span<double> g) {
  require_even(x.size());
  for (std::size_t i = 0; i < x.size(); i += 2) {
    const double t1 = x[i + 1] - x[i] * x[i];
    const double t2 = 1.0 - x[i];
    g[i] = -400.0 * x[i] * t1 - 2.0 * t2;
    g[i + 1] = 200.0 * t1;
  }
}

Problem extended_rosenbrock(std::size_t n) {
  require_even(n);
  Problem p("rosenbrock", n, extended_rosenbrock_value,
            extended_rosenbrock_grad);
  p.set_minimizer(Vector(n, 1.0));
  return p;
}

Problem diagonal_quadratic(std::span<const double> eigenvalues) {
  if (eigenvalues.empty())
    throw std::invalid_argument("diagonal_quadratic: no eigenvalues");
  for (double v : eigenvalues)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(
          "diagonal_quadratic: eigenvalues must be positive and finite");

  // b = diag(lambda) e, kept alongside lambda so both closures share it.
  const Vector lambda(eigenvalues.begin(), eigenvalues.end());
  const Vector rhs = lambda;
  const auto [lo, hi] = std::minmax_element(lambda.begin(), lambda.end());
  const std::size_t n = lambda.size();

  Problem p(
      "diag", n,
      [lambda, rhs](std::span<const double> x) {
        double f = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
          f += 0.5 * lambda[i] * x[i] * x[i] - rhs[i] * x[i];
        return f;
      },
      [lambda, rhs](std::span<const double> x, std::span<double> g) {
        for (std::size_t i = 0; i < x.size(); ++i)
          g[i] = lambda[i] * x[i] - rhs[i];
      });
  p.set_minimizer(Vector(n, 1.0));
  p.set_spectral_bounds(SpectralBounds(*lo, *hi));
  return p;
}

}  // namespace bbstab::problems
