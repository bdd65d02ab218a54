#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "test_util.hpp"
#include "wpc/oracle.hpp"

using wpc::oracle::grid_optimize_df;
using wpc::oracle::grid_optimize_dt;
using wpc::oracle::quad_expected_log;
using wpc::oracle::scan_concavity;
using wpc::SystemParams;

TEST_CASE("quadrature reproduces the known unit-scale value", "[oracle]") {
  CHECK(std::abs(quad_expected_log(1.0, 1e-9) - 1.4426950408889634) < 1e-8);
}

TEST_CASE("quadrature converges as the tolerance tightens", "[oracle]") {
  for (double k : {0.01, 0.25, 1.0, 7.5, 100.0}) {
    const double coarse = quad_expected_log(k, 1e-4);
    const double fine = quad_expected_log(k, 1e-8);
    CHECK(std::abs(coarse - fine) < 1e-4);
    // conservative error estimate: halving tol moves the result < previous tol
    CHECK(std::abs(quad_expected_log(k, 5e-9) - fine) < 1e-8);
  }
}

TEST_CASE("quadrature rejects invalid inputs", "[oracle]") {
  CHECK_THROWS_AS(quad_expected_log(0.0, 1e-8), std::domain_error);
  CHECK_THROWS_AS(quad_expected_log(1.0, 0.0), std::domain_error);
}

TEST_CASE("dt grid refines monotonically", "[oracle]") {
  SystemParams p;
  const double coarse = grid_optimize_dt(p, 1000).value;
  const double fine = grid_optimize_dt(p, 10000).value;
  CHECK(fine >= coarse - 1e-12);
}

TEST_CASE("dt grid locates the unconstrained peak", "[oracle]") {
  SystemParams p;
  p.theta = 0.9;  // cap far below the peak alpha, effectively inactive
  const auto res = grid_optimize_dt(p, 4000);
  CHECK(std::abs(res.alpha - 0.5) < 1.0 / 4000.0);
  CHECK_THROWS_AS(grid_optimize_dt(p, 99), std::domain_error);
}

TEST_CASE("df grid respects the hop symmetry at the midpoint", "[oracle]") {
  SystemParams p;
  p.gamma_o = wpc::db_to_linear(-18.0);
  const auto res = grid_optimize_df(p, 400);
  REQUIRE(res.feasible);
  const double relay_time = 1.0 - res.alpha - res.beta;
  CHECK(std::abs(res.beta - relay_time) <= 1.0 / 400.0 + 1e-12);
  CHECK_THROWS_AS(grid_optimize_df(p, 99), std::domain_error);
}

TEST_CASE("concavity scanner flags a convex counterexample", "[oracle]") {
  const auto convex = [](double x) { return x * x; };
  CHECK(scan_concavity(convex, -1.0, 1.0, 50, 1e-4) > 0.0);
  const auto concave = [](double x) { return -x * x; };
  CHECK(scan_concavity(concave, -1.0, 1.0, 50, 1e-4) < 0.0);
  CHECK_THROWS_AS(scan_concavity(convex, 1.0, -1.0, 50, 1e-4), std::domain_error);
  CHECK_THROWS_AS(scan_concavity(convex, -1.0, 1.0, 5, 1e-4), std::domain_error);
  CHECK_THROWS_AS(scan_concavity(convex, -1.0, 1.0, 50, 0.0), std::domain_error);
}
