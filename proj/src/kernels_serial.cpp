#include "bbstab/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace bbstab::kernels::serial {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  double total = 0.0;
  for (std::size_t lo = 0; lo < n; lo += kReductionBlock) {
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double partial = 0.0;
    for (std::size_t i = lo; i < hi; ++i) partial += a[i] * b[i];
    total += partial;
  }
  return total;
}

double nrm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double nrm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) {
    const double av = std::abs(v);
    if (av > m || std::isnan(av)) m = av;
    if (std::isnan(m)) break;
  }
  return m;
}

void sub(std::span<const double> a, std::span<const double> b,
         std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
}

void step(std::span<const double> x, double alpha, std::span<const double> g,
          std::span<double> out) {
  assert(x.size() == g.size() && x.size() == out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - alpha * g[i];
}

bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(),
                     [](double v) { return std::isfinite(v); });
}

void csr_matvec(const CsrView& a, std::span<const double> x,
                std::span<double> y) {
  assert(x.size() == a.n && y.size() == a.n);
  for (std::size_t r = 0; r < a.n; ++r) {
    double acc = 0.0;
    for (std::size_t p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p)
      acc += a.values[p] * x[a.column_indices[p]];
    y[r] = acc;
  }
}

}  // namespace bbstab::kernels::serial
