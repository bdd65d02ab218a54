#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wpc/channel.hpp"
#include "wpc/df.hpp"
#include "wpc/dt.hpp"
#include "wpc/params.hpp"

namespace wpc {

/// Simulation controls. Results are a pure function of (seed, slots, params,
/// split): every slot derives its own random stream from (seed, slot index),
/// and per-slot statistics are folded over fixed-size blocks in index order,
/// so neither chunk_size nor the number of workers changes any output bit.
struct SimConfig {
  std::uint64_t slots = 10000;
  std::uint64_t seed = 1;
  bool include_noise = false;
  std::uint64_t chunk_size = 65536;  ///< slots handed to a worker at a time
};

/// Full physical state of one slot. Energies follow the harvest phase,
/// powers the spend phases; fields of the protocol not in use stay zero.
struct SlotRealization {
  double h_as = 0.0, h_ar = 0.0, h_ad = 0.0;
  double e_s = 0.0, e_r = 0.0;
  double p_s = 0.0, p_s_co = 0.0, p_r = 0.0;
  double gamma_dt = 0.0, gamma_sr = 0.0, gamma_rd = 0.0;
  double r_dt = 0.0, r_sr = 0.0, r_rd = 0.0;
};

/// Aggregated Monte Carlo estimates. For the relayed protocol the headline
/// mean_throughput is min(mean_sr, mean_rd), matching the analytic
/// definition; mean_min is the mean of the per-slot minimum. Slots in outage
/// still contribute their (low) rate to the unconditional means;
/// mean_throughput_no_outage conditions them away for diagnostics.
struct SimResult {
  std::uint64_t slots = 0;
  double mean_throughput = 0.0;
  double throughput_stderr = 0.0;
  double outage_rate = 0.0;
  double outage_stderr = 0.0;
  double mean_throughput_no_outage = 0.0;
  // Relay extras (zero for direct transmission).
  double mean_sr = 0.0, sr_stderr = 0.0;
  double mean_rd = 0.0, rd_stderr = 0.0;
  double outage_sr_rate = 0.0, outage_rd_rate = 0.0;
  double mean_min = 0.0, min_stderr = 0.0;
};

namespace detail {

inline void check_gain(double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::domain_error("channel gain must be positive and finite");
}

inline void check_sir(double gamma) {
  if (!std::isfinite(gamma))
    throw std::overflow_error("SIR overflowed; parameters too extreme");
}

constexpr std::uint64_t kBlockSlots = 4096;

struct BlockSums {
  double r = 0.0, r2 = 0.0;
  double sr = 0.0, sr2 = 0.0;
  double rd = 0.0, rd2 = 0.0;
  double mn = 0.0, mn2 = 0.0;
  double r_no_outage = 0.0;
  std::uint64_t outages = 0, outages_sr = 0, outages_rd = 0, clear = 0;

  BlockSums& operator+=(const BlockSums& o) {
    r += o.r;
    r2 += o.r2;
    sr += o.sr;
    sr2 += o.sr2;
    rd += o.rd;
    rd2 += o.rd2;
    mn += o.mn;
    mn2 += o.mn2;
    r_no_outage += o.r_no_outage;
    outages += o.outages;
    outages_sr += o.outages_sr;
    outages_rd += o.outages_rd;
    clear += o.clear;
    return *this;
  }
};

/// Runs per_slot over all slots, blockwise and possibly in parallel, and
/// folds the block partials in index order.
template <typename PerSlot>
BlockSums run_blocks(std::uint64_t slots, std::uint64_t chunk_size,
                     PerSlot&& per_slot) {
  if (slots == 0) throw std::domain_error("slots must be >= 1");
  if (chunk_size == 0) throw std::domain_error("chunk_size must be >= 1");

  const std::uint64_t n_blocks = (slots + kBlockSlots - 1) / kBlockSlots;
  const std::uint64_t blocks_per_chunk =
      std::max<std::uint64_t>(1, chunk_size / kBlockSlots);
  const std::uint64_t n_chunks =
      (n_blocks + blocks_per_chunk - 1) / blocks_per_chunk;

  std::vector<BlockSums> partials(n_blocks);
  const auto run_block = [&](std::uint64_t block) {
    BlockSums sums;
    const std::uint64_t lo = block * kBlockSlots;
    const std::uint64_t hi = std::min(slots, lo + kBlockSlots);
    for (std::uint64_t slot = lo; slot < hi; ++slot) per_slot(slot, sums);
    partials[block] = sums;
  };

  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, n_chunks));

  if (workers <= 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next_chunk{0};
    const auto worker = [&] {
      for (;;) {
        const std::uint64_t c = next_chunk.fetch_add(1);
        if (c >= n_chunks) return;
        const std::uint64_t b_lo = c * blocks_per_chunk;
        const std::uint64_t b_hi = std::min(n_blocks, b_lo + blocks_per_chunk);
        for (std::uint64_t b = b_lo; b < b_hi; ++b) run_block(b);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BlockSums total;
  for (const auto& b : partials) total += b;
  return total;
}

inline double sample_stderr(double sum, double sumsq, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sumsq - static_cast<double>(n) * mean * mean) /
                        (static_cast<double>(n) - 1.0));
  return std::sqrt(var / static_cast<double>(n));
}

inline double binomial_stderr(double p, std::uint64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace detail

/// Physical chain of one direct-transmission slot. With noise the SINR
/// follows the full energy/power model; without it the SIR is formed as
/// k*(h_as/h_ad) scaled by the AP-distance imbalance, so that with equal AP
/// distances it reproduces the analytic construction bit for bit.
inline SlotRealization derive_slot(const SystemParams& p, DtSplit s,
                                   double h_as, double h_ad,
                                   bool include_noise) {
  validate(p);
  detail::check_dt_split(s);
  detail::check_gain(h_as);
  detail::check_gain(h_ad);

  SlotRealization slot;
  slot.h_as = h_as;
  slot.h_ad = h_ad;
  slot.e_s = s.alpha * p.zeta * p.p_a * h_as * std::pow(p.r_as, -p.mu);
  slot.p_s = slot.e_s / (1.0 - s.alpha);
  if (include_noise) {
    slot.gamma_dt =
        slot.p_s / (p.p_a * h_ad * std::pow(p.r_ad, -p.mu) + p.sigma2);
  } else {
    const double k = p.zeta * s.alpha / (1.0 - s.alpha);
    slot.gamma_dt = k * (h_as / h_ad) * std::pow(p.r_ad / p.r_as, p.mu);
  }
  detail::check_sir(slot.gamma_dt);
  slot.r_dt = (1.0 - s.alpha) * std::log2(1.0 + slot.gamma_dt);
  return slot;
}

/// Physical chain of one relayed slot (both hops).
inline SlotRealization derive_slot(const SystemParams& p, DfSplit s,
                                   double h_as, double h_ar, double h_ad,
                                   bool include_noise) {
  validate(p);
  detail::check_df_split(s);
  detail::check_gain(h_as);
  detail::check_gain(h_ar);
  detail::check_gain(h_ad);

  const double relay_time = 1.0 - s.alpha - s.beta;
  SlotRealization slot;
  slot.h_as = h_as;
  slot.h_ar = h_ar;
  slot.h_ad = h_ad;
  slot.e_s = s.alpha * p.zeta * p.p_a * h_as * std::pow(p.r_as, -p.mu);
  slot.e_r = s.alpha * p.zeta * p.p_a * h_ar * std::pow(p.r_ar, -p.mu);
  slot.p_s_co = slot.e_s / s.beta;
  slot.p_r = slot.e_r / relay_time;
  if (include_noise) {
    slot.gamma_sr = slot.p_s_co * std::pow(p.d, -p.mu) /
                    (p.p_a * h_ar * std::pow(p.r_ar, -p.mu) + p.sigma2);
    slot.gamma_rd = slot.p_r * std::pow(1.0 - p.d, -p.mu) /
                    (p.p_a * h_ad * std::pow(p.r_ad, -p.mu) + p.sigma2);
  } else {
    const double ksr = p.zeta * s.alpha * std::pow(p.d, -p.mu) / s.beta;
    const double krd =
        p.zeta * s.alpha * std::pow(1.0 - p.d, -p.mu) / relay_time;
    slot.gamma_sr = ksr * (h_as / h_ar) * std::pow(p.r_ar / p.r_as, p.mu);
    slot.gamma_rd = krd * (h_ar / h_ad) * std::pow(p.r_ad / p.r_ar, p.mu);
  }
  detail::check_sir(slot.gamma_sr);
  detail::check_sir(slot.gamma_rd);
  slot.r_sr = s.beta * std::log2(1.0 + slot.gamma_sr);
  slot.r_rd = relay_time * std::log2(1.0 + slot.gamma_rd);
  return slot;
}

/// Slot-level simulation of the direct link. Each slot draws h_as then h_ad
/// from its own (seed, slot) stream; outage means SIR <= gamma_o.
inline SimResult simulate_dt(const SystemParams& p, DtSplit s,
                             const SimConfig& cfg) {
  validate(p);
  detail::check_dt_split(s);

  const auto per_slot = [&](std::uint64_t slot, detail::BlockSums& sums) {
    Rng rng(cfg.seed, slot);
    const double h_as = sample_positive_exponential(rng).h;
    const double h_ad = sample_positive_exponential(rng).h;
    const SlotRealization sr = derive_slot(p, s, h_as, h_ad, cfg.include_noise);
    sums.r += sr.r_dt;
    sums.r2 += sr.r_dt * sr.r_dt;
    if (sr.gamma_dt <= p.gamma_o) {
      ++sums.outages;
    } else {
      ++sums.clear;
      sums.r_no_outage += sr.r_dt;
    }
  };
  const detail::BlockSums total =
      detail::run_blocks(cfg.slots, cfg.chunk_size, per_slot);

  SimResult res;
  res.slots = cfg.slots;
  const double n = static_cast<double>(cfg.slots);
  res.mean_throughput = total.r / n;
  res.throughput_stderr = detail::sample_stderr(total.r, total.r2, cfg.slots);
  res.outage_rate = static_cast<double>(total.outages) / n;
  res.outage_stderr = detail::binomial_stderr(res.outage_rate, cfg.slots);
  res.mean_throughput_no_outage =
      total.clear ? total.r_no_outage / static_cast<double>(total.clear) : 0.0;
  return res;
}

/// Slot-level simulation of the relayed link. Each slot draws h_as, h_ar,
/// h_ad in that order; the slot is in outage when either hop is.
inline SimResult simulate_df(const SystemParams& p, DfSplit s,
                             const SimConfig& cfg) {
  validate(p);
  detail::check_df_split(s);

  const auto per_slot = [&](std::uint64_t slot, detail::BlockSums& sums) {
    Rng rng(cfg.seed, slot);
    const double h_as = sample_positive_exponential(rng).h;
    const double h_ar = sample_positive_exponential(rng).h;
    const double h_ad = sample_positive_exponential(rng).h;
    const SlotRealization sr =
        derive_slot(p, s, h_as, h_ar, h_ad, cfg.include_noise);
    sums.sr += sr.r_sr;
    sums.sr2 += sr.r_sr * sr.r_sr;
    sums.rd += sr.r_rd;
    sums.rd2 += sr.r_rd * sr.r_rd;
    const double mn = std::min(sr.r_sr, sr.r_rd);
    sums.mn += mn;
    sums.mn2 += mn * mn;
    const bool out_sr = sr.gamma_sr <= p.gamma_o;
    const bool out_rd = sr.gamma_rd <= p.gamma_o;
    if (out_sr) ++sums.outages_sr;
    if (out_rd) ++sums.outages_rd;
    if (out_sr || out_rd) {
      ++sums.outages;
    } else {
      ++sums.clear;
      sums.r_no_outage += mn;
    }
  };
  const detail::BlockSums total =
      detail::run_blocks(cfg.slots, cfg.chunk_size, per_slot);

  SimResult res;
  res.slots = cfg.slots;
  const double n = static_cast<double>(cfg.slots);
  res.mean_sr = total.sr / n;
  res.sr_stderr = detail::sample_stderr(total.sr, total.sr2, cfg.slots);
  res.mean_rd = total.rd / n;
  res.rd_stderr = detail::sample_stderr(total.rd, total.rd2, cfg.slots);
  res.mean_min = total.mn / n;
  res.min_stderr = detail::sample_stderr(total.mn, total.mn2, cfg.slots);
  if (res.mean_sr <= res.mean_rd) {
    res.mean_throughput = res.mean_sr;
    res.throughput_stderr = res.sr_stderr;
  } else {
    res.mean_throughput = res.mean_rd;
    res.throughput_stderr = res.rd_stderr;
  }
  res.outage_rate = static_cast<double>(total.outages) / n;
  res.outage_stderr = detail::binomial_stderr(res.outage_rate, cfg.slots);
  res.outage_sr_rate = static_cast<double>(total.outages_sr) / n;
  res.outage_rd_rate = static_cast<double>(total.outages_rd) / n;
  res.mean_throughput_no_outage =
      total.clear ? total.r_no_outage / static_cast<double>(total.clear) : 0.0;
  return res;
}

}  // namespace wpc
