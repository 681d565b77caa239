#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "bbstab/kernels.hpp"
#include "bbstab/sparse.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bbstab;
namespace serial = kernels::serial;
namespace par = kernels::omp;

namespace {

bool same_bits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("small vectors sum left to right") {
  const Vector a{1e16, 1.0, -1e16, 1.0};
  const Vector ones(4, 1.0);
  // ((1e16 + 1) - 1e16) + 1 = 0 + 1 in double arithmetic
  CHECK(serial::dot(a, ones) == 1.0);
  CHECK(par::dot(a, ones) == 1.0);
}

TEST_CASE("norms") {
  const Vector v{3.0, -4.0};
  CHECK(serial::nrm2(v) == 5.0);
  CHECK(serial::nrm_inf(v) == 4.0);
  CHECK(std::isnan(serial::nrm_inf(Vector{1.0, std::nan("")})));
  CHECK(std::isnan(par::nrm_inf(Vector{std::nan(""), 1.0})));
  CHECK(serial::all_finite(v));
  CHECK_FALSE(serial::all_finite(Vector{1.0, std::numeric_limits<double>::infinity()}));
}

TEST_CASE("step and sub") {
  const Vector x{1.0, 2.0}, g{4.0, -2.0};
  Vector out(2), d(2);
  serial::step(x, 0.5, g, out);
  CHECK(out == Vector{-1.0, 3.0});
  serial::sub(x, g, d);
  CHECK(d == Vector{-3.0, 4.0});
}

TEST_CASE("OpenMP kernels are bitwise identical to the serial reference") {
  std::mt19937_64 rng(42);
  for (std::size_t n : {std::size_t{1}, std::size_t{4095}, std::size_t{4097},
                        std::size_t{32768}, std::size_t{100003}}) {
    CAPTURE(n);
    const Vector a = testing::random_vector(rng, n, -1e3, 1e3);
    const Vector b = testing::random_vector(rng, n, -1e3, 1e3);
    CHECK(same_bits(serial::dot(a, b), par::dot(a, b)));
    CHECK(same_bits(serial::nrm2(a), par::nrm2(a)));
    CHECK(same_bits(serial::nrm_inf(a), par::nrm_inf(a)));
    Vector s1(n), s2(n);
    serial::step(a, 0.37, b, s1);
    par::step(a, 0.37, b, s2);
    CHECK(s1 == s2);
    serial::sub(a, b, s1);
    par::sub(a, b, s2);
    CHECK(s1 == s2);
  }
}

TEST_CASE("CSR matvec: serial and OpenMP agree bitwise on a large matrix") {
  const std::size_t m = 200;  // 40000 rows, above the parallel threshold
  std::vector<sparse::SparseMatrix::Triplet> t;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      const std::size_t i = r * m + c;
      t.push_back({i, i, 4.1});
      if (c > 0) t.push_back({i, i - 1, -1.0});
      if (c + 1 < m) t.push_back({i, i + 1, -1.0});
      if (r > 0) t.push_back({i, i - m, -1.0});
      if (r + 1 < m) t.push_back({i, i + m, -1.0});
    }
  const auto a = sparse::SparseMatrix::from_triplets(m * m, t);
  std::mt19937_64 rng(7);
  const Vector x = testing::random_vector(rng, a.n());
  Vector y1(a.n()), y2(a.n());
  serial::csr_matvec(a.view(), x, y1);
  par::csr_matvec(a.view(), x, y2);
  CHECK(y1 == y2);
}

}  // TEST_SUITE
