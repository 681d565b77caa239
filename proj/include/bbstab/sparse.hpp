#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bbstab/core.hpp"
#include "bbstab/kernels.hpp"

namespace bbstab::sparse {

/// Square matrix in compressed-row storage. Column indices are sorted and
/// unique within each row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  /// Validates the CSR arrays; throws std::invalid_argument on malformed
  /// offsets, out-of-range or unsorted columns.
  SparseMatrix(std::size_t n, std::vector<std::size_t> row_offsets,
               std::vector<std::size_t> column_indices,
               std::vector<double> values);

  /// Builds from (row, col, value) triplets, 0-based. Duplicates are summed.
  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };
  static SparseMatrix from_triplets(std::size_t n, std::vector<Triplet> entries);
  static SparseMatrix from_dense(std::size_t n, std::span<const double> dense);
  static SparseMatrix identity(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t nnz() const { return values_.size(); }
  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<std::size_t>& column_indices() const {
    return column_indices_;
  }
  const std::vector<double>& values() const { return values_; }

  /// Entry (i, j), zero when not stored.
  double at(std::size_t i, std::size_t j) const;
  bool is_symmetric() const;
  kernels::CsrView view() const;

  bool operator==(const SparseMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> column_indices_;
  std::vector<double> values_;
};

class MatrixMarketError : public std::runtime_error {
 public:
  enum class Kind {
    MalformedHeader,
    MalformedEntry,
    IndexOutOfRange,
    NonSquare,
    UnsupportedField,
    EntryCountMismatch,
  };

  MatrixMarketError(Kind kind, std::size_t line, const std::string& detail);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// Coordinate format, real field, symmetric or general, 1-based indices.
/// Symmetric files are mirrored into both triangles.
SparseMatrix parse_matrix_market(std::istream& in);
SparseMatrix parse_matrix_market(std::string_view text);
SparseMatrix read_matrix_market(const std::string& path);

/// Writes every stored entry in coordinate general form with round-trip
/// precision.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);

/// y = A x. Throws std::invalid_argument on dimension mismatch.
Vector matvec(const SparseMatrix& a, std::span<const double> x);
void matvec_into(const SparseMatrix& a, std::span<const double> x,
                 std::span<double> y);

/// f = x'Ax/2 - b'x with b = A e.
/// The Problem's closures share ownership of the matrix and right-hand side.
struct QuadraticProblem {
  std::shared_ptr<const SparseMatrix> matrix;
  std::shared_ptr<const Vector> rhs;
  Problem problem;
};

QuadraticProblem build_quadratic(SparseMatrix a, std::string name = "quadratic");

/// Power iteration for the largest eigenvalue, then on (sigma I - A) with
/// sigma = 1.01 * that estimate for the smallest. Both ends are widened by
/// 5%. Empty if either iteration misses `tol` within `max_iters`, or the
/// smallest estimate is not positive. Not a certified enclosure.
std::optional<SpectralBounds> estimate_spectral_bounds(const SparseMatrix& a,
                                                       std::size_t max_iters,
                                                       double tol);

}  // namespace bbstab::sparse
