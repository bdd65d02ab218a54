#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wpc/channel.hpp"
#include "wpc/params.hpp"

namespace wpc {

/// Slot split for direct transmission: the first `alpha` of the slot harvests,
/// the remaining `1-alpha` transmits.
struct DtSplit {
  double alpha;
};

/// Outage probability and fading-averaged throughput of one link.
struct LinkStats {
  double outage;
  double expected_throughput;
};

/// Which constraint decides the optimum.
enum class Binding { interior, outage_constraint, infeasible };

inline const char* to_string(Binding b) {
  switch (b) {
    case Binding::interior: return "interior";
    case Binding::outage_constraint: return "outage_constraint";
    default: return "infeasible";
  }
}

struct DtOptimum {
  double alpha_star;
  double throughput;
  double outage;
  Binding binding;
};

namespace detail {

inline void check_dt_split(DtSplit s) {
  if (!(s.alpha > 0.0 && s.alpha < 1.0))
    throw std::domain_error("alpha must lie in (0,1)");
}

}  // namespace detail

/// SIR scale factor of the direct link: k = zeta*alpha/(1-alpha). The
/// received SIR is distributed as k*H1/H2.
inline double dt_sir_scale(const SystemParams& p, DtSplit s) {
  require_analytic(p);
  detail::check_dt_split(s);
  return p.zeta * s.alpha / (1.0 - s.alpha);
}

/// P(SIR <= gamma_o) = (1-alpha)*gamma_o / (zeta*alpha + (1-alpha)*gamma_o).
/// Strictly decreasing in alpha.
inline double dt_outage(const SystemParams& p, DtSplit s) {
  return ratio_cdf(dt_sir_scale(p, s), p.gamma_o);
}

/// Fading-averaged throughput (1-alpha)*E[log2(1+SIR)] in bits/s/Hz.
/// For zeta = 1 this is alpha*(1-alpha)/(1-2*alpha)*log2(1/alpha - 1) with the
/// removable point at alpha = 0.5 equal to 0.5*log2(e).
inline double dt_expected_throughput(const SystemParams& p, DtSplit s) {
  return (1.0 - s.alpha) * expected_log2_one_plus(dt_sir_scale(p, s));
}

inline LinkStats dt_link_stats(const SystemParams& p, DtSplit s) {
  return {dt_outage(p, s), dt_expected_throughput(p, s)};
}

/// Smallest alpha meeting the outage cap:
/// (1-theta)*gamma_o / (theta*zeta + (1-theta)*gamma_o). Always in (0,1), and
/// dt_outage at this alpha equals theta.
inline double dt_min_alpha(const SystemParams& p) {
  require_analytic(p);
  const double num = (1.0 - p.theta) * p.gamma_o;
  return num / (p.theta * p.zeta + num);
}

namespace detail {

/// Golden-section maximization of a unimodal function on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Maximizes the expected direct-transmission throughput subject to the
/// outage cap. For zeta = 1 the answer is closed form,
/// alpha* = max(0.5, dt_min_alpha); otherwise the unconstrained optimum is
/// located numerically and clamped to the feasible interval.
inline DtOptimum dt_optimize(const SystemParams& p) {
  require_analytic(p);
  const double a_min = dt_min_alpha(p);

  double a_free;  // unconstrained maximizer
  if (p.zeta == 1.0) {
    a_free = 0.5;
  } else {
    const auto value = [&p](double a) {
      return dt_expected_throughput(p, DtSplit{a});
    };
    a_free = detail::golden_max(value, 1e-9, 1.0 - 1e-9, 1e-9);
  }

  DtOptimum opt{};
  if (a_free >= a_min) {
    opt.alpha_star = a_free;
    opt.binding = Binding::interior;
  } else {
    opt.alpha_star = a_min;
    opt.binding = Binding::outage_constraint;
  }
  opt.throughput = dt_expected_throughput(p, DtSplit{opt.alpha_star});
  opt.outage = dt_outage(p, DtSplit{opt.alpha_star});
  return opt;
}

/// Throughput of the deterministic (unit-gain) channel model:
/// (1-alpha)*log2(1/(1-alpha)). Maximized at alpha = 1 - 1/e.
inline double dt_deterministic_throughput(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must lie in (0,1)");
  return -(1.0 - alpha) * std::log2(1.0 - alpha);
}

/// Optimal harvest ratio for the deterministic channel under the SIR
/// threshold gamma_o: max(1 - 1/e, gamma_o/(1+gamma_o)). The second branch is
/// the alpha at which the deterministic SIR alpha/(1-alpha) meets gamma_o;
/// the two branches coincide at gamma_o = e - 1.
inline double dt_deterministic_optimize(double gamma_o) {
  if (!(gamma_o > 0.0) || !std::isfinite(gamma_o))
    throw std::domain_error("gamma_o must be positive and finite");
  const double unconstrained = 1.0 - 1.0 / std::exp(1.0);
  const double threshold = gamma_o / (1.0 + gamma_o);
  return std::max(unconstrained, threshold);
}

}  // namespace wpc
