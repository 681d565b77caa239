#include <cmath>
#include <limits>
#include <random>

#include "bbstab/stepsize.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bbstab;
using stepsize::bb1;
using stepsize::bb2;

namespace {

StepPair pair(const Vector& s, const Vector& y) { return StepPair{s, y}; }

}  // namespace

TEST_SUITE("stepsize") {

TEST_CASE("bb1 examples") {
  const Vector s1{2, 0}, y1{1, 0}, s2{1, 1}, y2{1, 2}, y3{-1, -1};
  CHECK(*bb1(pair(s1, y1)) == 2.0);
  CHECK(*bb1(pair(s2, y2)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_FALSE(bb1(pair(s2, y3)));
}

TEST_CASE("bb1 rejects overflowing quotients and zero curvature") {
  const Vector s{1e200, 0}, y{1e-200, 0}, orth{0, 1};
  CHECK_FALSE(bb1(pair(s, y)));
  CHECK_FALSE(bb1(pair(s, orth)));
}

TEST_CASE("bb2 examples") {
  const Vector s1{2, 0}, y1{1, 0}, s2{1, 1}, y2{1, 2}, s3{1, 0}, zero{0, 0};
  CHECK(*bb2(pair(s1, y1)) == 2.0);
  CHECK(*bb2(pair(s2, y2)) == doctest::Approx(3.0 / 5.0).epsilon(1e-15));
  CHECK_FALSE(bb2(pair(s3, zero)));
}

TEST_CASE("safeguarded_bb examples") {
  const Vector s1{1, 1}, y1{-1, -1}, s2{2, 0}, y2{1, 0}, s3{3, 0}, y3{-1, 0};
  const auto a = stepsize::safeguarded_bb(pair(s1, y1), Rule::BB1);
  CHECK(a.alpha == 1.0);
  CHECK(a.branch == Branch::BBSafeguarded);
  const auto b = stepsize::safeguarded_bb(pair(s2, y2), Rule::BB2);
  CHECK(b.alpha == 2.0);
  CHECK(b.branch == Branch::BBRaw);
  const auto c = stepsize::safeguarded_bb(pair(s3, y3), Rule::BB1);
  CHECK(c.alpha == 3.0);
  CHECK(c.branch == Branch::BBSafeguarded);
  const Vector zero{0, 0};
  CHECK_THROWS_AS(stepsize::safeguarded_bb(pair(s1, zero), Rule::BB1),
                  DegeneratePairError);
}

TEST_CASE("safeguard also fires on s'y = 0") {
  const Vector s{1, 0}, y{0, 2};
  const auto a = stepsize::safeguarded_bb(pair(s, y), Rule::BB2);
  CHECK(a.branch == Branch::BBSafeguarded);
  CHECK(a.alpha == 0.5);
}

TEST_CASE("stab_stepsize examples") {
  CHECK(stepsize::stab_stepsize(2.0, Vector{10, 0}) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(std::isinf(stepsize::stab_stepsize(kInfinity, Vector{1, 1})));
  CHECK(stepsize::stab_stepsize(1.0, Vector{3, 4}) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(stepsize::stab_stepsize(1.0, Vector{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(stepsize::stab_stepsize(0.0, Vector{1, 0}), std::invalid_argument);
}

TEST_CASE("combined_stepsize examples") {
  const auto a = stepsize::combined_stepsize(0.5, 0.2);
  CHECK(a.alpha == 0.2);
  CHECK(a.branch == Branch::StabCap);
  const auto b = stepsize::combined_stepsize(0.5, kInfinity);
  CHECK(b.alpha == 0.5);
  CHECK(b.branch == Branch::BBRaw);
  const auto c = stepsize::combined_stepsize(0.3, 0.3);
  CHECK(c.alpha == 0.3);
  CHECK(c.branch == Branch::BBRaw);
  const auto d = stepsize::combined_stepsize(0.3, Branch::BBSafeguarded, 1.0);
  CHECK(d.branch == Branch::BBSafeguarded);
}

TEST_CASE("adaptive_delta examples") {
  CHECK(stepsize::adaptive_delta(std::array<double, 3>{3, 5, 4}, 0.25) == 0.75);
  CHECK(stepsize::adaptive_delta(std::array<double, 3>{1, 1, 1}, 0.3) == 0.3);
  CHECK(stepsize::adaptive_delta(std::array<double, 3>{4, 1, 2}, 0.5) == 0.5);
  CHECK_THROWS_AS(stepsize::adaptive_delta(std::array<double, 3>{0, 1, 2}, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(stepsize::adaptive_delta(std::array<double, 3>{kInfinity, 1, 2}, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(stepsize::adaptive_delta(std::array<double, 3>{1, 1, 2}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("bb1 >= bb2 on random pairs with positive curvature") {
  std::mt19937_64 rng(11);
  int tested = 0;
  while (tested < 2000) {
    const Vector s = testing::random_vector(rng, 6), y = testing::random_vector(rng, 6);
    const auto a1 = bb1(pair(s, y));
    const auto a2 = bb2(pair(s, y));
    if (!a1) continue;
    REQUIRE(a2);
    CHECK(*a1 >= *a2);
    ++tested;
  }
}

TEST_CASE("rotation and scaling invariance") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 8;
    Vector s = testing::random_vector(rng, n), y = testing::random_vector(rng, n);
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) sy += s[i] * y[i];
    if (sy <= 0.0)
      for (double& v : y) v = -v;
    const auto q = testing::random_orthogonal(rng, n);
    const Vector qs = q.apply(s), qy = q.apply(y);
    CHECK(testing::rel_diff(*bb1(pair(s, y)), *bb1(pair(qs, qy))) <= 1e-12);
    CHECK(testing::rel_diff(*bb2(pair(s, y)), *bb2(pair(qs, qy))) <= 1e-12);

    std::uniform_real_distribution<double> scale(0.1, 10.0);
    double t = scale(rng);
    if (trial % 2) t = -t;
    Vector ts(n), ty(n);
    for (std::size_t i = 0; i < n; ++i) {
      ts[i] = t * s[i];
      ty[i] = t * y[i];
    }
    CHECK(testing::rel_diff(*bb1(pair(s, y)), *bb1(pair(ts, ty))) <= 1e-13);
  }
}

TEST_CASE("the capped step never exceeds delta") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> pos(1e-3, 1e3);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vector g = testing::random_vector(rng, 5, -100.0, 100.0);
    const double delta = pos(rng), alpha_bb = pos(rng);
    const auto out =
        stepsize::combined_stepsize(alpha_bb, stepsize::stab_stepsize(delta, g));
    double gn = 0.0;
    for (double v : g) gn += v * v;
    gn = std::sqrt(gn);
    CHECK(out.alpha * gn <= delta * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()));
  }
}

TEST_CASE("branch names round trip") {
  for (Branch b : {Branch::BBRaw, Branch::BBSafeguarded, Branch::StabCap, Branch::Bootstrap})
    CHECK(parse_branch(to_string(b)) == b);
  CHECK_FALSE(parse_branch("Capped"));
}

}  // TEST_SUITE
