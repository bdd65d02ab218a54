#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "test_util.hpp"
#include "wpc/channel.hpp"
#include "wpc/oracle.hpp"

using wpc::expected_log2_one_plus;
using wpc::kLog2E;
using wpc::ratio_cdf;
using wpc::ratio_pdf;
using wpc::Rng;

TEST_CASE("ratio_pdf evaluates k/(k+x)^2", "[channel]") {
  CHECK(ratio_pdf(1.0, 0.0) == 1.0);
  CHECK(ratio_pdf(2.0, 2.0) == 0.125);
  CHECK(ratio_pdf(0.5, 1.5) == 0.125);
}

TEST_CASE("ratio_pdf rejects invalid inputs", "[channel]") {
  CHECK_THROWS_AS(ratio_pdf(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(ratio_pdf(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(ratio_pdf(1.0, -0.5), std::domain_error);
  CHECK_THROWS_AS(ratio_pdf(std::nan(""), 1.0), std::domain_error);
}

TEST_CASE("ratio_pdf integrates to one", "[channel]") {
  for (double k : {0.05, 0.5, 1.0, 3.0, 40.0})
    CHECK(std::abs(testutil::ratio_pdf_mass(k) - 1.0) < 1e-6);
}

TEST_CASE("ratio_cdf evaluates x/(k+x)", "[channel]") {
  CHECK(ratio_cdf(3.0, 3.0) == 0.5);
  CHECK(ratio_cdf(1.0, 0.0) == 0.0);
  CHECK(ratio_cdf(2.0, 6.0) == 0.75);
  CHECK_THROWS_AS(ratio_cdf(-2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(ratio_cdf(2.0, -1.0), std::domain_error);
}

TEST_CASE("ratio_cdf halves exactly at the scale factor", "[channel]") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double k = std::exp(testutil::uniform(rng, -7.0, 7.0));
    CHECK(ratio_cdf(k, k) == 0.5);
  }
}

TEST_CASE("ratio_cdf is nondecreasing and saturates", "[channel]") {
  const double k = 0.7;
  double prev = ratio_cdf(k, 0.0);
  for (double x = 0.25; x < 50.0; x += 0.25) {
    const double c = ratio_cdf(k, x);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(ratio_cdf(k, 1e12) > 1.0 - 1e-11);
}

TEST_CASE("ratio_cdf derivative matches ratio_pdf", "[channel]") {
  for (double k : {0.3, 1.0, 5.0}) {
    for (double x = 1e-3; x <= 1e3; x *= 1.9) {
      const double h = 1e-4 * std::max(x, 1e-2);
      const double deriv = (ratio_cdf(k, x + h) - ratio_cdf(k, x - h)) / (2.0 * h);
      CHECK(std::abs(deriv - ratio_pdf(k, x)) < 1e-6);
    }
  }
}

TEST_CASE("expected_log2_one_plus removable point and continuity", "[channel]") {
  CHECK(expected_log2_one_plus(1.0) == Catch::Approx(kLog2E).epsilon(1e-14));
  CHECK(std::abs(expected_log2_one_plus(1.0 + 1e-7) - kLog2E) < 1e-6);
  CHECK(std::abs(expected_log2_one_plus(1.0 - 1e-7) - kLog2E) < 1e-6);
  CHECK_THROWS_AS(expected_log2_one_plus(0.0), std::domain_error);
  CHECK_THROWS_AS(expected_log2_one_plus(-2.0), std::domain_error);
}

TEST_CASE("expected_log2_one_plus known values", "[channel]") {
  // k*log2(k)/(k-1): exact rationals at k = 1/4, 2, 4.
  CHECK(expected_log2_one_plus(0.25) == Catch::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(expected_log2_one_plus(2.0) == Catch::Approx(2.0).epsilon(1e-14));
  CHECK(expected_log2_one_plus(4.0) == Catch::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(expected_log2_one_plus(10.0) ==
        Catch::Approx(3.691031216541514).epsilon(1e-13));
}

TEST_CASE("expected_log2_one_plus matches quadrature", "[channel]") {
  for (double k : {0.25, 0.8, 3.0})
    CHECK(std::abs(expected_log2_one_plus(k) -
                   wpc::oracle::quad_expected_log(k, 1e-8)) < 1e-6);
}

TEST_CASE("expected_log2_one_plus is strictly increasing", "[channel]") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const double k = std::exp(testutil::uniform(rng, -9.0, 9.0));
    const double k2 = k * (1.0 + 1e-4);
    CHECK(expected_log2_one_plus(k2) > expected_log2_one_plus(k));
  }
}

TEST_CASE("expected_log2_one_plus matches a sampling estimate", "[channel]") {
  const double k = 10.0;
  const std::size_t n = 1'000'000;
  Rng rng(20240601);
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::log2(1.0 + wpc::sample_ratio(rng, k));
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sumsq - n * mean * mean) / (n - 1.0));
  const double se = sd / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean - expected_log2_one_plus(k)) < 3.0 * se);
}

TEST_CASE("sample_unit_exponential is deterministic and nonnegative", "[channel]") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double ha = wpc::sample_unit_exponential(a).h;
    const double hb = wpc::sample_unit_exponential(b).h;
    CHECK(ha == hb);
    CHECK(ha >= 0.0);
    CHECK(std::isfinite(ha));
  }
  // the inverse transform pins the lower support endpoint at exactly zero
  CHECK(-std::log1p(-0.0) == 0.0);
}

TEST_CASE("stream-derived generators are reproducible", "[channel]") {
  Rng a(9, 123), b(9, 123), c(9, 124);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() != c.next_u64());  // distinct streams diverge
}

TEST_CASE("sample_unit_exponential mean approaches one", "[channel]") {
  const std::size_t n = 200'000;
  Rng rng(77);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += wpc::sample_unit_exponential(rng).h;
  CHECK(std::abs(sum / n - 1.0) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sample_unit_exponential passes a KS test", "[channel]") {
  const std::size_t n = 1'000'000;
  Rng rng(101);
  std::vector<double> xs(n);
  for (auto& x : xs) x = wpc::sample_unit_exponential(rng).h;
  const double d = testutil::ks_statistic(
      std::move(xs), [](double x) { return -std::expm1(-x); });
  CHECK(d < testutil::ks_critical(0.01, n));
}

TEST_CASE("sample_ratio scales exactly with k", "[channel]") {
  Rng a(31), b(31);
  for (int i = 0; i < 1000; ++i)
    CHECK(wpc::sample_ratio(a, 2.0) == 2.0 * wpc::sample_ratio(b, 1.0));
}

TEST_CASE("sample_ratio empirical median sits near k", "[channel]") {
  const std::size_t n = 100'000;
  const double k = 5.0;
  Rng rng(13);
  std::vector<double> xs(n);
  for (auto& x : xs) x = wpc::sample_ratio(rng, k);
  std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
  CHECK(std::abs(xs[n / 2] - k) < 0.15);
}

TEST_CASE("sample_ratio passes a KS test against x/(k+x)", "[channel]") {
  const std::size_t n = 100'000;
  for (double k : {0.5, 1.0, 4.0}) {
    Rng rng(211 + static_cast<std::uint64_t>(10.0 * k));
    std::vector<double> xs(n);
    for (auto& x : xs) x = wpc::sample_ratio(rng, k);
    const double d = testutil::ks_statistic(
        std::move(xs), [k](double x) { return ratio_cdf(k, x); });
    CHECK(d < testutil::ks_critical(0.01, n));
  }
}

TEST_CASE("ScaledExpRatio bundles the distribution", "[channel]") {
  const wpc::ScaledExpRatio dist(3.0);
  CHECK(dist.pdf(1.0) == ratio_pdf(3.0, 1.0));
  CHECK(dist.cdf(dist.median()) == 0.5);
  CHECK(dist.mean_log2_one_plus() == expected_log2_one_plus(3.0));
  CHECK_THROWS_AS(wpc::ScaledExpRatio(0.0), std::domain_error);
}
