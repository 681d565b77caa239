#include <algorithm>
#include <cmath>
#include <random>

#include "bbstab/core.hpp"
#include "doctest.h"

using namespace bbstab;

TEST_SUITE("core") {

TEST_CASE("SpectralBounds validates and derives kappa") {
  const SpectralBounds b(1.0, 10.0);
  CHECK(b.kappa() == 10.0);
  CHECK_THROWS_AS(SpectralBounds(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBounds(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBounds(1.0, kInfinity), std::invalid_argument);
}

TEST_CASE("classify_region examples") {
  const SpectralBounds b(1.0, 2.0);
  CHECK(classify_region(0.5, 1.0, b) == Region::Omega1);
  CHECK(classify_region(1.0, 1.0, b) == Region::Omega1);
  CHECK(classify_region(1.5, 1.0, b) == Region::Omega2);
  CHECK(classify_region(2.0, 1.0, b) == Region::Omega2);
  CHECK(classify_region(3.0, 1.0, b) == Region::Omega3Prime);
  CHECK(classify_region(4.0, 1.0, b) == Region::Omega3Prime);
  CHECK(classify_region(5.0, 1.0, b) == Region::Omega3Outer);
  CHECK(in_omega3(Region::Omega3Prime));
  CHECK(in_omega3(Region::Omega3Outer));
  CHECK_FALSE(in_omega3(Region::Omega2));
}

TEST_CASE("classify_region rejects bad input") {
  const SpectralBounds b(1.0, 2.0);
  CHECK_THROWS_AS(classify_region(std::nan(""), 1.0, b), std::invalid_argument);
  CHECK_THROWS_AS(classify_region(kInfinity, 1.0, b), std::invalid_argument);
  CHECK_THROWS_AS(classify_region(1.0, 0.0, b), std::invalid_argument);
  CHECK_THROWS_AS(classify_region(1.0, -1.0, b), std::invalid_argument);
  CHECK_THROWS_AS(classify_region(1.0, kInfinity, b), std::invalid_argument);
}

TEST_CASE("regions partition [0, inf) and are monotone in |g|") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 100.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double l1 = u(rng), l2 = l1 * (1.0 + u(rng));
    const SpectralBounds b(l1, l2);
    const double delta = u(rng);
    const double l1d = l1 * delta, l2d = l2 * delta, l3d = b.kappa() * l2d;
    const double top = 3.0 * l3d;
    std::vector<double> gs(200);
    for (double& g : gs) g = top * unit(rng);
    gs.push_back(l1d);
    gs.push_back(l2d);
    gs.push_back(l3d);
    std::sort(gs.begin(), gs.end());
    int last = -1;
    for (double g : gs) {
      const Region r = classify_region(g, delta, b);
      const int idx = static_cast<int>(r);
      CHECK(idx >= last);
      last = idx;
      const int hits = (g <= l1d) + (g > l1d && g <= l2d) +
                       (g > l2d && g <= l3d) + (g > l3d);
      CHECK(hits == 1);
      const Region expected = g <= l1d   ? Region::Omega1
                              : g <= l2d ? Region::Omega2
                              : g <= l3d ? Region::Omega3Prime
                                         : Region::Omega3Outer;
      CHECK(r == expected);
    }
  }
}

TEST_CASE("should_terminate examples and ordering") {
  SolverConfig config;
  config.rel_tol = 1e-6;
  config.max_iterations = 100000;
  CHECK(should_terminate(9e-5, 100.0, 12, config) ==
        Termination{Status::Converged, 12});
  CHECK(should_terminate(1.0, 100.0, 100000, config) ==
        Termination{Status::IterationLimit, 100000});
  CHECK(should_terminate(std::nan(""), 1.0, 3, config) ==
        Termination{Status::NonFiniteEncountered, 3});
  CHECK(should_terminate(0.0, 1.0, 4, config) == Termination{Status::ZeroGradient, 4});
  CHECK_FALSE(should_terminate(1.0, 100.0, 5, config));
  // convergence wins over the limit at the same call
  CHECK(should_terminate(1e-7, 1.0, 100000, config) ==
        Termination{Status::Converged, 100000});
}

TEST_CASE("enum text round trips") {
  for (Region r : {Region::Omega1, Region::Omega2, Region::Omega3Prime, Region::Omega3Outer})
    CHECK(parse_region(to_string(r)) == r);
  for (Status s : {Status::Converged, Status::IterationLimit, Status::NonFiniteEncountered,
                   Status::ZeroGradient, Status::BootstrapFailed})
    CHECK(parse_status(to_string(s)) == s);
  CHECK_FALSE(parse_region("Omega4"));
  CHECK_FALSE(parse_status("Done"));
}

TEST_CASE("DeltaPolicy factories") {
  CHECK(DeltaPolicy::fixed(kInfinity) == DeltaPolicy::infinite());
  CHECK(DeltaPolicy::fixed(2.0).kind == DeltaPolicy::Kind::Fixed);
  CHECK(DeltaPolicy::adaptive(0.25).value == 0.25);
  CHECK_THROWS_AS(DeltaPolicy::fixed(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DeltaPolicy::adaptive(-1.0), std::invalid_argument);
}

TEST_CASE("Problem checks dimensions") {
  Problem p("line", 2, [](std::span<const double> x) { return x[0] + x[1]; },
            [](std::span<const double>, std::span<double> g) {
              g[0] = 1.0;
              g[1] = 1.0;
            });
  CHECK(p.value_at(Vector{1.0, 2.0}) == 3.0);
  CHECK(p.gradient_at(Vector{0.0, 0.0}) == Vector{1.0, 1.0});
  CHECK_THROWS_AS(p.gradient_at(Vector{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(p.set_minimizer(Vector{1.0}), std::invalid_argument);
}

}  // TEST_SUITE
