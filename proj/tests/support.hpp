#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bbstab/core.hpp"

namespace bbstab::testing {

inline Vector random_vector(std::mt19937_64& rng, std::size_t n,
                            double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Row-major dense n x n matrix.
struct Dense {
  std::size_t n = 0;
  std::vector<double> a;

  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  Vector apply(std::span<const double> x) const {
    Vector y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y[i] += a[i * n + j] * x[j];
    return y;
  }
  Vector apply_transpose(std::span<const double> x) const {
    Vector y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y[j] += a[i * n + j] * x[i];
    return y;
  }
};

/// Product of n random Householder reflections: orthogonal to rounding.
inline Dense random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  Dense q{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) q(i, i) = 1.0;
  std::normal_distribution<double> normal;
  for (std::size_t r = 0; r < n; ++r) {
    Vector v(n);
    double vv = 0.0;
    for (double& x : v) {
      x = normal(rng);
      vv += x * x;
    }
    // Q <- Q (I - 2 v v' / v'v)
    for (std::size_t i = 0; i < n; ++i) {
      double qv = 0.0;
      for (std::size_t j = 0; j < n; ++j) qv += q(i, j) * v[j];
      for (std::size_t j = 0; j < n; ++j) q(i, j) -= 2.0 * qv * v[j] / vv;
    }
  }
  return q;
}

/// f = x'Ax/2 - b'x for a dense symmetric A.
inline Problem dense_quadratic(std::string name, Dense a, Vector b) {
  const std::size_t n = a.n;
  auto A = std::make_shared<const Dense>(std::move(a));
  auto B = std::make_shared<const Vector>(std::move(b));
  return Problem(
      std::move(name), n,
      [A, B](std::span<const double> x) {
        const Vector ax = A->apply(x);
        double f = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
          f += 0.5 * x[i] * ax[i] - (*B)[i] * x[i];
        return f;
      },
      [A, B](std::span<const double> x, std::span<double> g) {
        const Vector ax = A->apply(x);
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = ax[i] - (*B)[i];
      });
}

/// Wraps a problem and counts value and gradient evaluations.
struct Counters {
  std::size_t values = 0;
  std::size_t gradients = 0;
};

inline Problem counting(const Problem& inner, std::shared_ptr<Counters> c) {
  auto p = std::make_shared<const Problem>(inner);
  Problem out(
      inner.name(), inner.dimension(),
      [p, c](std::span<const double> x) {
        ++c->values;
        return p->value_at(x);
      },
      [p, c](std::span<const double> x, std::span<double> g) {
        ++c->gradients;
        p->gradient_into(x, g);
      });
  if (inner.minimizer()) out.set_minimizer(*inner.minimizer());
  if (inner.spectral_bounds()) out.set_spectral_bounds(*inner.spectral_bounds());
  return out;
}

}  // namespace bbstab::testing
