#include "bbstab/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>

namespace bbstab::kernels::omp {
namespace {

using Index = std::int64_t;

bool go_parallel(std::size_t n) { return n >= kParallelThreshold; }

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  if (n <= kReductionBlock) return serial::dot(a, b);

  const Index blocks =
      static_cast<Index>((n + kReductionBlock - 1) / kReductionBlock);
  std::vector<double> partials(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (Index blk = 0; blk < blocks; ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double partial = 0.0;
    for (std::size_t i = lo; i < hi; ++i) partial += a[i] * b[i];
    partials[static_cast<std::size_t>(blk)] = partial;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

double nrm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double nrm_inf(std::span<const double> a) {
  const Index n = static_cast<Index>(a.size());
  double m = 0.0;
  bool saw_nan = false;
#pragma omp parallel for reduction(max : m) reduction(|| : saw_nan) \
    if (go_parallel(a.size()))
  for (Index i = 0; i < n; ++i) {
    const double av = std::abs(a[static_cast<std::size_t>(i)]);
    if (std::isnan(av))
      saw_nan = true;
    else
      m = std::max(m, av);
  }
  return saw_nan ? std::nan("") : m;
}

void sub(std::span<const double> a, std::span<const double> b,
         std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  const Index n = static_cast<Index>(a.size());
#pragma omp parallel for schedule(static) if (go_parallel(a.size()))
  for (Index i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = a[u] - b[u];
  }
}

void step(std::span<const double> x, double alpha, std::span<const double> g,
          std::span<double> out) {
  assert(x.size() == g.size() && x.size() == out.size());
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static) if (go_parallel(x.size()))
  for (Index i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = x[u] - alpha * g[u];
  }
}

bool all_finite(std::span<const double> a) {
  const Index n = static_cast<Index>(a.size());
  bool ok = true;
#pragma omp parallel for reduction(&& : ok) if (go_parallel(a.size()))
  for (Index i = 0; i < n; ++i)
    ok = ok && std::isfinite(a[static_cast<std::size_t>(i)]);
  return ok;
}

void csr_matvec(const CsrView& a, std::span<const double> x,
                std::span<double> y) {
  assert(x.size() == a.n && y.size() == a.n);
  const Index rows = static_cast<Index>(a.n);
  // Each row is accumulated by one thread in storage order, so the result
  // matches serial::csr_matvec exactly.
#pragma omp parallel for schedule(static) if (go_parallel(a.values.size()))
  for (Index r = 0; r < rows; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    double acc = 0.0;
    for (std::size_t p = a.row_offsets[ur]; p < a.row_offsets[ur + 1]; ++p)
      acc += a.values[p] * x[a.column_indices[p]];
    y[ur] = acc;
  }
}

}  // namespace bbstab::kernels::omp
