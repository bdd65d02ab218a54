#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "wpc/channel.hpp"
#include "wpc/params.hpp"

namespace wpc {

/// Slot split for the relayed protocol: harvest for `alpha`, source-to-relay
/// for `beta`, relay-to-destination for the remaining `1-alpha-beta`.
struct DfSplit {
  double alpha;
  double beta;
};

/// Reparameterized split: kappa = alpha/beta (harvest ratio) and
/// z = alpha + beta (harvest-and-first-hop sum time).
struct KappaZ {
  double kappa;
  double z;
};

namespace detail {

inline void check_df_split(DfSplit s) {
  if (!(s.alpha > 0.0 && s.alpha < 1.0) || !(s.beta > 0.0 && s.beta < 1.0) ||
      !(s.alpha + s.beta < 1.0))
    throw std::domain_error("require alpha, beta in (0,1) with alpha+beta < 1");
}

inline void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::domain_error("kappa must be positive and finite");
}

}  // namespace detail

inline KappaZ to_kappa_z(DfSplit s) {
  detail::check_df_split(s);
  return {s.alpha / s.beta, s.alpha + s.beta};
}

inline DfSplit to_split(KappaZ kz) {
  detail::check_kappa(kz.kappa);
  if (!(kz.z > 0.0 && kz.z < 1.0))
    throw std::domain_error("z must lie in (0,1)");
  return {kz.kappa * kz.z / (1.0 + kz.kappa), kz.z / (1.0 + kz.kappa)};
}

/// SIR scale of the source-relay hop: zeta*alpha*d^-mu/beta.
inline double k_sr(const SystemParams& p, DfSplit s) {
  require_analytic(p);
  detail::check_df_split(s);
  return p.zeta * s.alpha * std::pow(p.d, -p.mu) / s.beta;
}

/// SIR scale of the relay-destination hop: zeta*alpha*(1-d)^-mu/(1-alpha-beta).
inline double k_rd(const SystemParams& p, DfSplit s) {
  require_analytic(p);
  detail::check_df_split(s);
  return p.zeta * s.alpha * std::pow(1.0 - p.d, -p.mu) / (1.0 - s.alpha - s.beta);
}

inline double outage_sr(const SystemParams& p, DfSplit s) {
  return ratio_cdf(k_sr(p, s), p.gamma_o);
}

inline double outage_rd(const SystemParams& p, DfSplit s) {
  return ratio_cdf(k_rd(p, s), p.gamma_o);
}

/// Overall outage of the two-hop link: the slot fails when either hop does,
/// so 1 - (1-outage_sr)(1-outage_rd) under independent fading.
inline double outage_df(const SystemParams& p, DfSplit s) {
  return 1.0 - (1.0 - outage_sr(p, s)) * (1.0 - outage_rd(p, s));
}

inline double expected_throughput_sr(const SystemParams& p, DfSplit s) {
  return s.beta * expected_log2_one_plus(k_sr(p, s));
}

inline double expected_throughput_rd(const SystemParams& p, DfSplit s) {
  return (1.0 - s.alpha - s.beta) * expected_log2_one_plus(k_rd(p, s));
}

/// End-to-end expected throughput of the relayed link: the lower of the two
/// hop throughputs.
inline double expected_throughput_df(const SystemParams& p, DfSplit s) {
  return std::min(expected_throughput_sr(p, s), expected_throughput_rd(p, s));
}

/// Source-relay expected throughput in (kappa, z) coordinates:
/// z/(1+kappa) * E[log2(1+X)] with X scaled by zeta*kappa*d^-mu. Identical to
/// expected_throughput_sr after conversion; z = 1 is admitted here as the
/// degenerate no-relay-phase edge used by sweep presets.
inline double esr_kappa_z(const SystemParams& p, KappaZ kz) {
  require_analytic(p);
  detail::check_kappa(kz.kappa);
  if (!(kz.z > 0.0 && kz.z <= 1.0))
    throw std::domain_error("z must lie in (0,1]");
  const double scale = p.zeta * kz.kappa * std::pow(p.d, -p.mu);
  return kz.z / (1.0 + kz.kappa) * expected_log2_one_plus(scale);
}

/// Rate of the first hop per unit of z. The kappa maximizing the first-hop
/// throughput does not depend on z, which enters only as a factor.
inline double esr_per_unit_z(const SystemParams& p, double kappa) {
  require_analytic(p);
  detail::check_kappa(kappa);
  const double scale = p.zeta * kappa * std::pow(p.d, -p.mu);
  return expected_log2_one_plus(scale) / (1.0 + kappa);
}

namespace detail {

inline constexpr double kKappaLo = 1e-6;
inline constexpr double kKappaHi = 1e6;

/// Scan a log-spaced kappa grid, then zoom around the best cell. Robust to
/// the feasibility cliffs that golden-section would stall on.
template <typename F>
double refine_log_argmax(F&& value, double lo, double hi, int coarse, int rounds) {
  const double t_min = std::log(lo), t_max = std::log(hi);
  double t_lo = t_min, t_hi = t_max;
  double best_t = t_lo;
  double best_v = -std::numeric_limits<double>::infinity();
  int n = coarse;
  for (int round = 0; round < rounds; ++round) {
    const double dt = (t_hi - t_lo) / n;
    for (int i = 0; i <= n; ++i) {
      const double t = t_lo + i * dt;
      const double v = value(std::exp(t));
      if (v > best_v) {
        best_v = v;
        best_t = t;
      }
    }
    t_lo = std::max(t_min, best_t - dt);
    t_hi = std::min(t_max, best_t + dt);
    n = 64;
  }
  return std::exp(best_t);
}

}  // namespace detail

/// The kappa maximizing the first-hop throughput at any fixed z (the rate per
/// unit z is unimodal in kappa; bracket [1e-6, 1e6] on a log scale, refined to
/// ~1e-10 in log kappa).
inline double optimize_kappa(const SystemParams& p) {
  require_analytic(p);
  const auto value = [&p](double kappa) { return esr_per_unit_z(p, kappa); };
  return detail::refine_log_argmax(value, detail::kKappaLo, detail::kKappaHi,
                                   2048, 8);
}

/// Smallest z keeping the two-hop outage at or below theta, at fixed kappa.
///
/// Substituting alpha = kappa*z/(1+kappa), beta = z/(1+kappa) into the outage
/// product makes the first-hop outage z-free and the second-hop outage
/// decreasing in z, giving the closed form below. Returns nullopt when even
/// z -> 1 cannot meet the cap (first-hop outage alone exceeds theta).
inline std::optional<double> z_lower(const SystemParams& p, double kappa) {
  require_analytic(p);
  detail::check_kappa(kappa);
  const double ksr = p.zeta * kappa * std::pow(p.d, -p.mu);
  const double pass_sr = ksr / (ksr + p.gamma_o);  // 1 - first-hop outage
  const double keep = 1.0 - p.theta;
  if (pass_sr < keep) return std::nullopt;
  const double w = p.zeta * kappa * std::pow(1.0 - p.d, -p.mu) / (1.0 + kappa);
  const double num = keep * p.gamma_o;
  return num / (w * (pass_sr - keep) + num);
}

/// f(tau) = tau*log2(tau)/(tau-1), strictly increasing on (0, inf) with the
/// removable value log2(e) at tau = 1.
inline double f_tau(double tau) { return expected_log2_one_plus(tau); }

/// Data-causality threshold at fixed kappa:
/// psi = (1-d)^mu * f(k_sr)/(zeta*kappa), with k_sr = zeta*kappa*d^-mu.
/// The first hop carries no more than the second iff f(tau) >= psi, where
/// tau = (1/z - 1)(1 + 1/kappa)(1-d)^mu/zeta is the reciprocal second-hop
/// SIR scale.
inline double psi(const SystemParams& p, double kappa) {
  require_analytic(p);
  detail::check_kappa(kappa);
  const double ksr = p.zeta * kappa * std::pow(p.d, -p.mu);
  return std::pow(1.0 - p.d, p.mu) * expected_log2_one_plus(ksr) /
         (p.zeta * kappa);
}

namespace detail {

/// Bisection inverse of f_tau in log tau, clamped to [lo, hi].
inline double f_inverse(double psi_value, double lo, double hi) {
  if (psi_value <= f_tau(lo)) return lo;
  if (psi_value >= f_tau(hi)) return hi;
  double t_lo = std::log(lo), t_hi = std::log(hi);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (f_tau(std::exp(mid)) < psi_value)
      t_lo = mid;
    else
      t_hi = mid;
  }
  return std::exp(0.5 * (t_lo + t_hi));
}

}  // namespace detail

/// Inverse of f_tau by bisection in log tau over [1e-12, 1e12];
/// |f(tau*) - psi| < 1e-9 on return.
inline double tau_star(double psi_value) {
  if (!(psi_value > 0.0) || !std::isfinite(psi_value))
    throw std::domain_error("psi must be positive and finite");
  if (psi_value < f_tau(1e-12) || psi_value > f_tau(1e12))
    throw std::domain_error("psi outside the invertible bracket of f_tau");
  const double tau = detail::f_inverse(psi_value, 1e-12, 1e12);
  if (std::abs(f_tau(tau) - psi_value) >= 1e-9)
    throw std::runtime_error("tau_star bisection did not converge");
  return tau;
}

/// Largest z satisfying data causality at fixed kappa:
/// z <= [1 + zeta*kappa*tau*/((1+kappa)(1-d)^mu)]^-1. At this bound the two
/// hop throughputs are equal.
inline double z_upper(const SystemParams& p, double kappa, double tau_star_value) {
  require_analytic(p);
  detail::check_kappa(kappa);
  if (!(tau_star_value > 0.0) || !std::isfinite(tau_star_value))
    throw std::domain_error("tau_star must be positive and finite");
  return 1.0 / (1.0 + p.zeta * kappa * tau_star_value /
                          ((1.0 + kappa) * std::pow(1.0 - p.d, p.mu)));
}

/// Feasible z window at fixed kappa, bundled with the causality quantities.
/// When the outage cap cannot be met at any z, z_lower is NaN.
struct DfFeasibility {
  double z_lower = std::numeric_limits<double>::quiet_NaN();
  double z_upper = std::numeric_limits<double>::quiet_NaN();
  double psi = std::numeric_limits<double>::quiet_NaN();
  double tau_star = std::numeric_limits<double>::quiet_NaN();
  bool feasible = false;
};

inline DfFeasibility df_feasibility(const SystemParams& p, double kappa) {
  DfFeasibility fs;
  fs.psi = psi(p, kappa);
  // Wide clamped bracket: psi beyond the invertible range only occurs in
  // corners where the window is empty (tau huge) or maximally open (tau tiny),
  // and the clamp preserves the verdict.
  fs.tau_star = detail::f_inverse(fs.psi, 1e-18, 1e300);
  fs.z_upper = z_upper(p, kappa, fs.tau_star);
  if (const auto zl = z_lower(p, kappa)) fs.z_lower = *zl;
  fs.feasible = fs.z_lower <= fs.z_upper && fs.z_lower > 0.0 &&
                fs.z_upper < 1.0;  // NaN compares false
  return fs;
}

struct DfOptimum {
  double kappa_star = std::numeric_limits<double>::quiet_NaN();
  double z_star = std::numeric_limits<double>::quiet_NaN();
  double alpha_star = std::numeric_limits<double>::quiet_NaN();
  double beta_star = std::numeric_limits<double>::quiet_NaN();
  double throughput = std::numeric_limits<double>::quiet_NaN();
  double outage = std::numeric_limits<double>::quiet_NaN();
  bool feasible = false;
};

namespace detail {

/// First-hop throughput attainable at this kappa: the objective is linear
/// increasing in z, so the best feasible z is the causality bound z_upper.
/// Returns -inf when the z window is empty.
inline double df_value_at_kappa(const SystemParams& p, double kappa, double* z_out) {
  const DfFeasibility fs = df_feasibility(p, kappa);
  if (!fs.feasible) return -std::numeric_limits<double>::infinity();
  if (z_out) *z_out = fs.z_upper;
  return esr_per_unit_z(p, kappa) * fs.z_upper;
}

}  // namespace detail

/// Maximizes the relayed expected throughput subject to the outage cap and
/// data causality.
///
/// In (kappa, z) coordinates the objective is z times a kappa-only rate and
/// the constraints confine z to [z_lower(kappa), z_upper(kappa)], so the best
/// z at fixed kappa is z_upper(kappa) and the outer problem is a 1-D search
/// over kappa of rate(kappa)*z_upper(kappa) restricted to nonempty windows.
/// Note the kappa maximizing the rate alone (optimize_kappa) is not in
/// general the overall maximizer, because the causality bound moves with
/// kappa. Sets feasible = false when no kappa in [1e-6, 1e6] has a window.
inline DfOptimum df_optimize(const SystemParams& p) {
  require_analytic(p);
  const auto value = [&p](double kappa) {
    return detail::df_value_at_kappa(p, kappa, nullptr);
  };
  const double kappa_best =
      detail::refine_log_argmax(value, detail::kKappaLo, detail::kKappaHi, 2048, 8);

  DfOptimum opt;
  double z_best = 0.0;
  const double v = detail::df_value_at_kappa(p, kappa_best, &z_best);
  if (!std::isfinite(v)) return opt;  // no feasible window anywhere

  opt.feasible = true;
  opt.kappa_star = kappa_best;
  opt.z_star = z_best;
  const DfSplit split = to_split({kappa_best, z_best});
  opt.alpha_star = split.alpha;
  opt.beta_star = split.beta;
  opt.throughput = expected_throughput_df(p, split);
  opt.outage = outage_df(p, split);
  return opt;
}

}  // namespace wpc
