#include <cmath>
#include <random>
#include <sstream>

#include "bbstab/kernels.hpp"
#include "bbstab/sparse.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bbstab;
using namespace bbstab::sparse;

namespace {

MatrixMarketError::Kind parse_error(std::string_view text) {
  try {
    parse_matrix_market(text);
  } catch (const MatrixMarketError& e) {
    return e.kind();
  }
  FAIL("expected a MatrixMarketError");
  return MatrixMarketError::Kind::MalformedHeader;
}

SparseMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, double density) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
  std::vector<SparseMatrix::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0 + u(rng)});
    for (std::size_t j = 0; j < i; ++j)
      if (coin(rng) < density) {
        const double v = u(rng);
        t.push_back({i, j, v});
        t.push_back({j, i, v});
      }
  }
  return SparseMatrix::from_triplets(n, t);
}

}  // namespace

TEST_SUITE("quadratic_io") {

TEST_CASE("symmetric file is mirrored; missing diagonal stays zero") {
  const auto a = parse_matrix_market(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "2 2 2\n"
      "1 1 2.0\n"
      "2 1 -1.0\n");
  CHECK(a.n() == 2);
  CHECK(a.at(0, 0) == 2.0);
  CHECK(a.at(0, 1) == -1.0);
  CHECK(a.at(1, 0) == -1.0);
  CHECK(a.at(1, 1) == 0.0);
  CHECK(a.nnz() == 3);
  CHECK(a.is_symmetric());
}

TEST_CASE("1x1, comments, blank lines, integer field, duplicates") {
  CHECK(parse_matrix_market("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 5.0\n")
            .at(0, 0) == 5.0);
  const auto a = parse_matrix_market(
      "%%MatrixMarket matrix coordinate integer general\n"
      "% a comment\n"
      "\n"
      "2 2 3\n"
      "1 1 1\n"
      "1 1 +2\n"
      "2 2 4\n");
  CHECK(a.at(0, 0) == 3.0);
  CHECK(a.at(1, 1) == 4.0);
}

TEST_CASE("malformed input reports its kind and line") {
  using K = MatrixMarketError::Kind;
  CHECK(parse_error("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n") ==
        K::UnsupportedField);
  CHECK(parse_error("%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n") ==
        K::UnsupportedField);
  CHECK(parse_error("%%MatrixMarket matrix array real general\n1 1\n1.0\n") ==
        K::UnsupportedField);
  CHECK(parse_error("hello\n") == K::MalformedHeader);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1\n") ==
        K::NonSquare);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n") ==
        K::IndexOutOfRange);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n0 1 1\n") ==
        K::IndexOutOfRange);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n") ==
        K::EntryCountMismatch);
  CHECK(parse_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1\n") ==
        K::MalformedEntry);
  try {
    parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n9 9 1\n");
    FAIL("expected an error");
  } catch (const MatrixMarketError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("write then parse gives the same CSR structure") {
  std::mt19937_64 rng(8);
  const auto a = random_symmetric(rng, 30, 0.2);
  std::ostringstream out;
  write_matrix_market(out, a);
  const auto b = parse_matrix_market(out.str());
  CHECK(a == b);
}

TEST_CASE("the shipped matrices parse as symmetric") {
  for (const char* name : {"lap1d_shift_100", "lap2d_shift_12x12", "fem_mass_1d_60",
                           "random_dd_80", "logdiag_50", "pentadiag_120"}) {
    CAPTURE(name);
    const auto a = read_matrix_market(std::string(BBSTAB_DATA_DIR) + "/matrices/" + name + ".mtx");
    CHECK(a.is_symmetric());
    for (std::size_t i = 0; i < a.n(); ++i)
      CHECK(a.row_offsets()[i + 1] > a.row_offsets()[i]);
  }
  CHECK_THROWS(read_matrix_market("/nonexistent/file.mtx"));
}

TEST_CASE("matvec examples") {
  const auto a = SparseMatrix::from_dense(2, Vector{2, -1, -1, 2});
  CHECK(matvec(a, Vector{1, 1}) == Vector{1, 1});
  CHECK(matvec(SparseMatrix::identity(3), Vector{4, 5, 6}) == Vector{4, 5, 6});
  CHECK_THROWS_AS(matvec(a, Vector{1, 1, 1}), std::invalid_argument);
}

TEST_CASE("matvec agrees with a dense triple loop") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_symmetric(rng, 10, 0.5);
    const Vector x = testing::random_vector(rng, 10);
    const Vector y = matvec(a, x);
    for (std::size_t i = 0; i < 10; ++i) {
      double ref = 0.0, scale = 0.0;
      for (std::size_t j = 0; j < 10; ++j) {
        ref += a.at(i, j) * x[j];
        scale += std::abs(a.at(i, j) * x[j]);
      }
      CHECK(std::abs(y[i] - ref) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("matvec is a symmetric bilinear form") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_symmetric(rng, 40, 0.1);
    const Vector x = testing::random_vector(rng, 40), z = testing::random_vector(rng, 40);
    const double xaz = kernels::dot(matvec(a, z), x);
    const double zax = kernels::dot(matvec(a, x), z);
    CHECK(testing::rel_diff(xaz, zax) <= 1e-12);
  }
}

TEST_CASE("build_quadratic examples") {
  const auto d = build_quadratic(SparseMatrix::from_dense(3, Vector{1, 0, 0, 0, 2, 0, 0, 0, 3}));
  CHECK(*d.rhs == Vector{1, 2, 3});
  CHECK(d.problem.gradient_at(Vector{0, 0, 0}) == Vector{-1, -2, -3});
  const auto t = build_quadratic(SparseMatrix::from_dense(2, Vector{2, -1, -1, 2}));
  CHECK(*t.rhs == Vector{1, 1});
  CHECK(t.problem.value_at(Vector{1, 1}) == -1.0);
  CHECK(*t.problem.minimizer() == Vector{1, 1});
}

TEST_CASE("g(e) vanishes on every shipped matrix") {
  for (const char* name : {"lap1d_shift_100", "random_dd_80", "pentadiag_120"}) {
    const auto q = build_quadratic(
        read_matrix_market(std::string(BBSTAB_DATA_DIR) + "/matrices/" + name + ".mtx"));
    const Vector e(q.matrix->n(), 1.0);
    CHECK(kernels::nrm2(q.problem.gradient_at(e)) <= 1e-12 * kernels::nrm2(*q.rhs));
  }
}

TEST_CASE("spectral bound estimates") {
  Vector diag10(100, 0.0);
  for (std::size_t i = 0; i < 10; ++i) diag10[i * 11] = static_cast<double>(i + 1);
  const auto b = estimate_spectral_bounds(SparseMatrix::from_dense(10, diag10), 20000, 1e-12);
  REQUIRE(b);
  CHECK(b->lambda_lo() <= 1.0);
  CHECK(b->lambda_lo() >= 1.0 / 1.05 - 1e-9);
  CHECK(b->lambda_hi() >= 10.0);
  CHECK(b->lambda_hi() <= 10.0 * 1.05 + 1e-9);

  const auto id = estimate_spectral_bounds(SparseMatrix::identity(5), 1000, 1e-12);
  REQUIRE(id);
  CHECK(id->lambda_lo() == doctest::Approx(1.0 / 1.05).epsilon(1e-9));
  CHECK(id->lambda_hi() == doctest::Approx(1.05).epsilon(1e-9));

  const auto t = estimate_spectral_bounds(SparseMatrix::from_dense(2, Vector{2, -1, -1, 2}), 1000, 1e-12);
  REQUIRE(t);
  CHECK(t->lambda_lo() <= 1.0);
  CHECK(t->lambda_hi() >= 3.0);
}

TEST_CASE("estimates bracket random positive diagonals") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> eig(0.5, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 15;
    std::vector<SparseMatrix::Triplet> t;
    double lo = kInfinity, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = eig(rng);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      t.push_back({i, i, v});
    }
    const auto b = estimate_spectral_bounds(SparseMatrix::from_triplets(n, t), 100000, 1e-13);
    REQUIRE(b);
    CHECK(b->lambda_lo() <= lo);
    CHECK(b->lambda_hi() >= hi);
  }
}

TEST_CASE("indefinite matrices give no bounds") {
  const auto a = SparseMatrix::from_dense(2, Vector{1, 0, 0, -1});
  CHECK_FALSE(estimate_spectral_bounds(a, 1000, 1e-12));
}

TEST_CASE("CSR constructor validates its arrays") {
  CHECK_THROWS_AS(SparseMatrix(2, {0, 1}, {0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SparseMatrix(2, {0, 1, 2}, {0, 2}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SparseMatrix(2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), std::invalid_argument);
}

}  // TEST_SUITE
