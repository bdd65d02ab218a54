#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "test_util.hpp"
#include "wpc/df.hpp"
#include "wpc/dt.hpp"
#include "wpc/montecarlo.hpp"

using wpc::DfSplit;
using wpc::DtSplit;
using wpc::Rng;
using wpc::SimConfig;
using wpc::SimResult;
using wpc::SystemParams;

namespace {

bool identical(const SimResult& a, const SimResult& b) {
  return std::memcmp(&a, &b, sizeof(SimResult)) == 0;
}

SystemParams params_db(double gamma_o_db) {
  SystemParams p;
  p.gamma_o = wpc::db_to_linear(gamma_o_db);
  return p;
}

}  // namespace

TEST_CASE("derive_slot direct link basics", "[montecarlo]") {
  const SystemParams p;
  const auto slot = wpc::derive_slot(p, DtSplit{0.5}, 1.3, 1.3, false);
  CHECK(slot.gamma_dt == 1.0);
  CHECK(slot.r_dt == 0.5);  // 0.5 * log2(2)
  CHECK(slot.e_s == 0.5 * 1.3);
  CHECK(slot.p_s == slot.e_s / 0.5);
  CHECK_THROWS_AS(wpc::derive_slot(p, DtSplit{0.5}, 0.0, 1.0, false),
                  std::domain_error);
  CHECK_THROWS_AS(wpc::derive_slot(p, DtSplit{0.5}, 1.0, -1.0, true),
                  std::domain_error);
}

TEST_CASE("noise-off SIR reduces to the analytic construction exactly",
          "[montecarlo]") {
  const SystemParams p;
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const double h1 = wpc::sample_positive_exponential(rng).h;
    const double h2 = wpc::sample_positive_exponential(rng).h;
    const double h3 = wpc::sample_positive_exponential(rng).h;
    const DtSplit dts{testutil::uniform(rng, 0.05, 0.95)};
    const auto dt_slot = wpc::derive_slot(p, dts, h1, h2, false);
    CHECK(dt_slot.gamma_dt == wpc::dt_sir_scale(p, dts) * (h1 / h2));

    const double a = testutil::uniform(rng, 0.1, 0.8);
    const double b = testutil::uniform(rng, 0.05, 0.9 - a);
    const auto df_slot = wpc::derive_slot(p, DfSplit{a, b}, h1, h2, h3, false);
    CHECK(df_slot.gamma_sr == wpc::k_sr(p, {a, b}) * (h1 / h2));
    CHECK(df_slot.gamma_rd == wpc::k_rd(p, {a, b}) * (h2 / h3));
    for (double field : {df_slot.e_s, df_slot.e_r, df_slot.p_s_co, df_slot.p_r,
                         df_slot.gamma_sr, df_slot.gamma_rd, df_slot.r_sr,
                         df_slot.r_rd})
      CHECK(field >= 0.0);
  }
}

TEST_CASE("noise-off SIR ignores the AP power", "[montecarlo]") {
  SystemParams p;
  SystemParams p10 = p;
  p10.p_a *= 10.0;
  const auto a = wpc::derive_slot(p, DtSplit{0.3}, 0.9, 1.7, false);
  const auto b = wpc::derive_slot(p10, DtSplit{0.3}, 0.9, 1.7, false);
  CHECK(a.gamma_dt == b.gamma_dt);
}

TEST_CASE("noise strictly lowers the slot SINR", "[montecarlo]") {
  SystemParams p;
  p.sigma2 = 0.05;
  const auto noisy = wpc::derive_slot(p, DtSplit{0.4}, 1.1, 0.8, true);
  const auto clean = wpc::derive_slot(p, DtSplit{0.4}, 1.1, 0.8, false);
  CHECK(noisy.gamma_dt < clean.gamma_dt);
  CHECK(noisy.r_dt < clean.r_dt);

  p.sigma2 = 0.0;  // with zero noise the full chain agrees up to rounding
  const auto full = wpc::derive_slot(p, DtSplit{0.4}, 1.1, 0.8, true);
  CHECK(full.gamma_dt == Catch::Approx(clean.gamma_dt).epsilon(1e-12));
}

TEST_CASE("derive_slot rejects overflowing configurations", "[montecarlo]") {
  SystemParams p;
  p.d = 1e-300;
  p.mu = 2.0;
  CHECK_THROWS_AS(
      wpc::derive_slot(p, DfSplit{0.4, 0.3}, 1.0, 1.0, 1.0, false),
      std::overflow_error);
}

TEST_CASE("simulation results are a pure function of seed and slots",
          "[montecarlo]") {
  const SystemParams p = params_db(-13.0);
  SimConfig cfg;
  cfg.slots = 50'000;
  cfg.seed = 99;
  const SimResult first = wpc::simulate_dt(p, {0.5}, cfg);
  const SimResult again = wpc::simulate_dt(p, {0.5}, cfg);
  CHECK(identical(first, again));

  for (std::uint64_t chunk : {512ull, 4096ull, 1048576ull}) {
    SimConfig alt = cfg;
    alt.chunk_size = chunk;
    CHECK(identical(first, wpc::simulate_dt(p, {0.5}, alt)));
  }

  SimConfig other = cfg;
  other.seed = 100;
  CHECK(!identical(first, wpc::simulate_dt(p, {0.5}, other)));

  const SimResult df1 = wpc::simulate_df(p, {0.4, 0.3}, cfg);
  SimConfig small = cfg;
  small.chunk_size = 1000;
  CHECK(identical(df1, wpc::simulate_df(p, {0.4, 0.3}, small)));
}

TEST_CASE("direct-link simulation tracks the closed forms", "[montecarlo]") {
  const SystemParams p = params_db(-13.0);
  SimConfig cfg;
  cfg.slots = 200'000;
  cfg.seed = 4242;
  for (double a : {0.2, 0.5, 0.8}) {
    const SimResult sim = wpc::simulate_dt(p, {a}, cfg);
    const double thr = wpc::dt_expected_throughput(p, {a});
    const double out = wpc::dt_outage(p, {a});
    CHECK(std::abs(sim.mean_throughput - thr) < 3.0 * sim.throughput_stderr);
    const double bin_se = std::sqrt(out * (1.0 - out) / cfg.slots);
    CHECK(std::abs(sim.outage_rate - out) < 3.0 * bin_se);
    CHECK(sim.mean_throughput_no_outage >= sim.mean_throughput);
  }
}

TEST_CASE("direct-link SIR distribution matches the ratio law", "[montecarlo]") {
  const SystemParams p;
  const DtSplit s{0.35};
  const double k = wpc::dt_sir_scale(p, s);
  const std::size_t n = 1'000'000;
  std::vector<double> gammas(n);
  for (std::size_t slot = 0; slot < n; ++slot) {
    Rng rng(606, slot);
    const double h_as = wpc::sample_positive_exponential(rng).h;
    const double h_ad = wpc::sample_positive_exponential(rng).h;
    gammas[slot] = wpc::derive_slot(p, s, h_as, h_ad, false).gamma_dt;
  }
  const double d = testutil::ks_statistic(
      std::move(gammas), [k](double x) { return wpc::ratio_cdf(k, x); });
  CHECK(d < testutil::ks_critical(0.01, n));
}

TEST_CASE("relay simulation tracks the closed forms", "[montecarlo]") {
  const SystemParams p = params_db(-18.0);
  const DfSplit s{0.5, 0.25};
  SimConfig cfg;
  cfg.slots = 200'000;
  cfg.seed = 777;
  const SimResult sim = wpc::simulate_df(p, s, cfg);

  CHECK(std::abs(sim.mean_sr - wpc::expected_throughput_sr(p, s)) <
        3.0 * sim.sr_stderr);
  CHECK(std::abs(sim.mean_rd - wpc::expected_throughput_rd(p, s)) <
        3.0 * sim.rd_stderr);

  const double out = wpc::outage_df(p, s);
  const double bin_se = std::sqrt(out * (1.0 - out) / cfg.slots);
  CHECK(std::abs(sim.outage_rate - out) < 3.0 * bin_se);

  // the per-slot minimum cannot beat the lower of the per-hop means
  CHECK(sim.mean_min <=
        std::min(sim.mean_sr, sim.mean_rd) + 3.0 * sim.min_stderr);
  CHECK(sim.mean_throughput == std::min(sim.mean_sr, sim.mean_rd));
}

TEST_CASE("noise probe only reduces per-slot rates", "[montecarlo]") {
  SystemParams p = params_db(-13.0);
  p.sigma2 = 0.2;
  for (std::uint64_t slot = 0; slot < 500; ++slot) {
    Rng rng(5, slot);
    const double h_as = wpc::sample_positive_exponential(rng).h;
    const double h_ad = wpc::sample_positive_exponential(rng).h;
    const auto noisy = wpc::derive_slot(p, DtSplit{0.5}, h_as, h_ad, true);
    const auto clean = wpc::derive_slot(p, DtSplit{0.5}, h_as, h_ad, false);
    CHECK(noisy.gamma_dt < clean.gamma_dt);
  }
}

TEST_CASE("simulation rejects degenerate configurations", "[montecarlo]") {
  const SystemParams p;
  SimConfig cfg;
  cfg.slots = 0;
  CHECK_THROWS_AS(wpc::simulate_dt(p, {0.5}, cfg), std::domain_error);
  cfg.slots = 10;
  cfg.chunk_size = 0;
  CHECK_THROWS_AS(wpc::simulate_dt(p, {0.5}, cfg), std::domain_error);
  cfg.chunk_size = 64;
  CHECK_THROWS_AS(wpc::simulate_df(p, {0.6, 0.4}, cfg), std::domain_error);
}
