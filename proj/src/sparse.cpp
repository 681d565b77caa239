#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bbstab/sparse.hpp"

namespace bbstab::sparse {

SparseMatrix::SparseMatrix(std::size_t n, std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> column_indices,
                           std::vector<double> values)
    : n_(n),
      row_offsets_(std::move(row_offsets)),
      column_indices_(std::move(column_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != n_ + 1 || row_offsets_.front() != 0 ||
      row_offsets_.back() != values_.size() ||
      column_indices_.size() != values_.size())
    throw std::invalid_argument("inconsistent CSR arrays");
  for (std::size_t r = 0; r < n_; ++r) {
    if (row_offsets_[r] > row_offsets_[r + 1])
      throw std::invalid_argument("CSR row offsets decrease");
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      if (column_indices_[p] >= n_)
        throw std::invalid_argument("CSR column index out of range");
      if (p > row_offsets_[r] && column_indices_[p - 1] >= column_indices_[p])
        throw std::invalid_argument("CSR columns not strictly increasing");
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t n,
                                         std::vector<Triplet> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(entries.size());
  vals.reserve(entries.size());
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const Triplet& t = entries[e];
    if (t.row >= n || t.col >= n)
      throw std::invalid_argument("triplet index out of range");
    if (e > 0 && entries[e - 1].row == t.row && entries[e - 1].col == t.col) {
      vals.back() += t.value;
      continue;
    }
    cols.push_back(t.col);
    vals.push_back(t.value);
    ++offsets[t.row + 1];
  }
  for (std::size_t r = 0; r < n; ++r) offsets[r + 1] += offsets[r];
  return SparseMatrix(n, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::from_dense(std::size_t n,
                                      std::span<const double> dense) {
  if (dense.size() != n * n)
    throw std::invalid_argument("dense matrix has wrong size");
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dense[i * n + j] != 0.0) entries.push_back({i, j, dense[i * n + j]});
  return from_triplets(n, std::move(entries));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
  return from_triplets(n, std::move(entries));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("SparseMatrix::at");
  const auto first = column_indices_.begin() +
                     static_cast<std::ptrdiff_t>(row_offsets_[i]);
  const auto last = column_indices_.begin() +
                    static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - column_indices_.begin())];
}

bool SparseMatrix::is_symmetric() const {
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p)
      if (at(column_indices_[p], r) != values_[p]) return false;
  return true;
}

kernels::CsrView SparseMatrix::view() const {
  return {n_, row_offsets_, column_indices_, values_};
}

void matvec_into(const SparseMatrix& a, std::span<const double> x,
                 std::span<double> y) {
  if (x.size() != a.n() || y.size() != a.n())
    throw std::invalid_argument("matvec: dimension mismatch");
  kernels::csr_matvec(a.view(), x, y);
}

Vector matvec(const SparseMatrix& a, std::span<const double> x) {
  Vector y(a.n());
  matvec_into(a, x, y);
  return y;
}

QuadraticProblem build_quadratic(SparseMatrix a, std::string name) {
  auto matrix = std::make_shared<const SparseMatrix>(std::move(a));
  const std::size_t n = matrix->n();
  auto rhs = std::make_shared<const Vector>(matvec(*matrix, Vector(n, 1.0)));

  Problem problem(
      std::move(name), n,
      [matrix, rhs](std::span<const double> x) {
        const Vector ax = matvec(*matrix, x);
        return 0.5 * kernels::dot(x, ax) - kernels::dot(*rhs, x);
      },
      [matrix, rhs](std::span<const double> x, std::span<double> g) {
        matvec_into(*matrix, x, g);
        kernels::sub(g, *rhs, g);
      });
  problem.set_minimizer(Vector(n, 1.0));
  return {std::move(matrix), std::move(rhs), std::move(problem)};
}

namespace {

struct PowerResult {
  double rayleigh = 0.0;
  bool converged = false;
};

// Power iteration on v -> shift * v + sign * A v.
PowerResult power_iteration(const SparseMatrix& a, double shift, double sign,
                            std::size_t max_iters, double tol) {
  const std::size_t n = a.n();
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(0.5, 1.5);
  Vector v(n), w(n);
  for (double& vi : v) vi = unit(rng);
  double norm = kernels::nrm2(v);
  for (double& vi : v) vi /= norm;

  PowerResult out;
  double previous = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    matvec_into(a, v, w);
    for (std::size_t i = 0; i < n; ++i) w[i] = shift * v[i] + sign * w[i];
    const double rq = kernels::dot(v, w);
    norm = kernels::nrm2(w);
    if (!(norm > 0.0) || !std::isfinite(norm)) return out;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    out.rayleigh = rq;
    if (it > 0 && std::abs(rq - previous) <= tol * std::abs(rq)) {
      out.converged = true;
      return out;
    }
    previous = rq;
  }
  return out;
}

}  // namespace

std::optional<SpectralBounds> estimate_spectral_bounds(const SparseMatrix& a,
                                                       std::size_t max_iters,
                                                       double tol) {
  if (a.n() == 0) return std::nullopt;
  const PowerResult top = power_iteration(a, 0.0, 1.0, max_iters, tol);
  if (!top.converged || !(top.rayleigh > 0.0)) return std::nullopt;
  const double sigma = 1.01 * top.rayleigh;
  const PowerResult bottom = power_iteration(a, sigma, -1.0, max_iters, tol);
  if (!bottom.converged) return std::nullopt;
  const double lambda_min = sigma - bottom.rayleigh;
  if (!(lambda_min > 0.0)) return std::nullopt;
  return SpectralBounds(lambda_min / 1.05,
                        std::max(lambda_min / 1.05, top.rayleigh * 1.05));
}

}  // namespace bbstab::sparse
