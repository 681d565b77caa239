#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bbstab {

using Vector = std::vector<double>;

namespace kernels {

/// Summation block length shared by every reduction. Partial sums are taken
/// over consecutive blocks of this many elements and then added in block
/// order, so the result never depends on the number of threads. For vectors
/// no longer than one block this is plain left-to-right accumulation.
inline constexpr std::size_t kReductionBlock = 4096;

/// Vectors shorter than this run the OpenMP kernels on the calling thread.
inline constexpr std::size_t kParallelThreshold = 1 << 15;

/// Compressed-row view used by the matrix-vector kernels.
struct CsrView {
  std::size_t n = 0;
  std::span<const std::size_t> row_offsets;
  std::span<const std::size_t> column_indices;
  std::span<const double> values;
};

// Straight loops. These define the arithmetic the parallel kernels must
// reproduce bit for bit and are what the tests compare against.
namespace serial {
double dot(std::span<const double> a, std::span<const double> b);
double nrm2(std::span<const double> a);
double nrm_inf(std::span<const double> a);
// out = a - b
void sub(std::span<const double> a, std::span<const double> b,
         std::span<double> out);
// out = x - alpha * g
void step(std::span<const double> x, double alpha, std::span<const double> g,
          std::span<double> out);
bool all_finite(std::span<const double> a);
// y = A x, row-major accumulation
void csr_matvec(const CsrView& a, std::span<const double> x,
                std::span<double> y);
}  // namespace serial

namespace omp {
double dot(std::span<const double> a, std::span<const double> b);
double nrm2(std::span<const double> a);
double nrm_inf(std::span<const double> a);
void sub(std::span<const double> a, std::span<const double> b,
         std::span<double> out);
void step(std::span<const double> x, double alpha, std::span<const double> g,
          std::span<double> out);
bool all_finite(std::span<const double> a);
void csr_matvec(const CsrView& a, std::span<const double> x,
                std::span<double> y);
}  // namespace omp

// The solver and problems call these.
using omp::all_finite;
using omp::csr_matvec;
using omp::dot;
using omp::nrm2;
using omp::nrm_inf;
using omp::step;
using omp::sub;

}  // namespace kernels
}  // namespace bbstab
