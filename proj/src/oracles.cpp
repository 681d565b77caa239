#include "bbstab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bbstab::oracles {
namespace {

double euclid(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

// Golden-section search on [lo, hi] until the bracket is `shrink` times its
// initial width, then the vertex of the parabola through the bracket ends and
// midpoint. Exact (up to rounding) for quadratic objectives.
double minimize_scalar(const std::function<double(double)>& phi, double lo,
                       double hi, double shrink = 1e-3) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double target = shrink * (hi - lo);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = phi(x1);
  double f2 = phi(x2);
  while (hi - lo > target) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = phi(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = phi(x2);
    }
  }
  const double h = 0.5 * (hi - lo);
  const double mid = lo + h;
  const double fl = phi(lo);
  const double fm = phi(mid);
  const double fh = phi(hi);
  const double curvature = fl - 2.0 * fm + fh;
  if (!(curvature > 0.0)) return mid;
  return mid + h * (fl - fh) / (2.0 * curvature);
}

}  // namespace

GradientCheck fd_gradient_check(const Problem& problem,
                                std::span<const double> x, double h) {
  const std::size_t n = problem.dimension();
  const Vector g = problem.gradient_at(x);
  Vector xp(x.begin(), x.end());
  GradientCheck out;
  for (std::size_t i = 0; i < n; ++i) {
    const double hi = h > 0.0 ? h : 1e-6 * std::max(1.0, std::abs(x[i]));
    xp[i] = x[i] + hi;
    const double upper_x = xp[i];
    const double f_plus = problem.value_at(xp);
    xp[i] = x[i] - hi;
    const double lower_x = xp[i];
    const double f_minus = problem.value_at(xp);
    xp[i] = x[i];
    if (!std::isfinite(f_plus) || !std::isfinite(f_minus))
      throw NonFiniteStencil("non-finite value at finite-difference stencil");
    const double fd = (f_plus - f_minus) / (upper_x - lower_x);
    const double err = std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i]));
    if (err > out.max_rel_error) {
      out.max_rel_error = err;
      out.worst_index = i;
    }
  }
  return out;
}

LeastSquaresStepsizes stepsize_oracle(const StepPair& pair) {
  const auto s = pair.s;
  const auto y = pair.y;
  if (s.size() != y.size())
    throw std::invalid_argument("stepsize_oracle: length mismatch");
  const double s_norm = euclid(s);
  const double y_norm = euclid(y);
  if (!(s_norm > 0.0) || !(y_norm > 0.0))
    throw std::invalid_argument("stepsize_oracle: s and y must be nonzero");

  // |s/a - y| is minimized through its reciprocal b = 1/a, where the residual
  // is quadratic. |b*| <= |y|/|s| and |a*| <= |s|/|y| bound the searches.
  auto residual1 = [&](double b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double r = b * s[i] - y[i];
      acc += r * r;
    }
    return acc;
  };
  auto residual2 = [&](double a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double r = s[i] - a * y[i];
      acc += r * r;
    }
    return acc;
  };
  const double b_bound = 2.0 * y_norm / s_norm;
  const double a_bound = 2.0 * s_norm / y_norm;
  const double b_star = minimize_scalar(residual1, -b_bound, b_bound);
  const double a_star = minimize_scalar(residual2, -a_bound, a_bound);
  return {1.0 / b_star, a_star};
}

CycleReport detect_cycle(std::span<const Vector> iterates,
                         std::size_t max_period, double tol) {
  const std::size_t count = iterates.size();
  if (max_period == 0 || count < 3 * max_period)
    throw std::invalid_argument("detect_cycle: window too short");
  CycleReport report;
  report.window_start = count / 3;
  report.window_end = count;
  report.max_deviation = kInfinity;

  for (std::size_t p = 1; p <= max_period; ++p) {
    double deviation = 0.0;
    double spread = 0.0;
    for (std::size_t k = report.window_start; k + p < count; ++k) {
      deviation = std::max(deviation, distance(iterates[k + p], iterates[k]));
      for (std::size_t j = 1; j < p; ++j)
        spread = std::max(spread, distance(iterates[k + j], iterates[k]));
    }
    if (deviation <= tol && spread > 10.0 * tol) {
      report.period = p;
      report.max_deviation = deviation;
      return report;
    }
    report.max_deviation = std::min(report.max_deviation, deviation);
  }
  return report;
}

RLinearFit fit_rlinear_envelope(std::span<const double> errors,
                                std::size_t skip, ErrorMeasure measure) {
  std::vector<double> ks, logs;
  for (std::size_t k = skip; k < errors.size(); ++k) {
    const double e = errors[k];
    if (!std::isfinite(e) || e < 0.0)
      throw std::invalid_argument(
          "fit_rlinear_envelope: errors must be finite and nonnegative");
    if (e == 0.0) break;
    ks.push_back(static_cast<double>(k));
    logs.push_back(std::log(e));
  }
  if (ks.size() < 10)
    throw std::invalid_argument("fit_rlinear_envelope: need at least 10 points");

  const double m = static_cast<double>(ks.size());
  double k_mean = 0.0, l_mean = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    k_mean += ks[i];
    l_mean += logs[i];
  }
  k_mean /= m;
  l_mean /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sxx += (ks[i] - k_mean) * (ks[i] - k_mean);
    sxy += (ks[i] - k_mean) * (logs[i] - l_mean);
  }
  const double slope = sxy / sxx;
  const double intercept = l_mean - slope * k_mean;

  RLinearFit fit;
  fit.c = std::exp(slope);
  fit.points = ks.size();
  fit.measure = measure;
  double log_gamma = -kInfinity;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    fit.residual =
        std::max(fit.residual, logs[i] - (intercept + slope * ks[i]));
    log_gamma = std::max(log_gamma, logs[i] - slope * ks[i]);
  }
  fit.gamma = std::exp(log_gamma);
  fit.r_linear = fit.c < 1.0 - 1e-6;
  return fit;
}

}  // namespace bbstab::oracles
