#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wpc/params.hpp"

// Independent numeric authorities used to validate the closed forms and
// optimizers. Nothing here calls into the analytic modules: every formula is
// evaluated from scratch so the two routes share no code path.

namespace wpc::oracle {

namespace detail {

constexpr double kLog2E = 1.4426950408889634074;

/// log2(1/k)/(1/k - 1) evaluated directly; the quotient is well conditioned
/// away from the removable point, which is handled by an exact-equality guard.
inline double rate_term(double k) {
  if (k == 1.0) return kLog2E;
  return k * std::log2(k) / (k - 1.0);
}

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth,
                        bool& converged) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    converged = false;
    return left + right;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                          converged) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                          converged);
}

}  // namespace detail

/// E[log2(1+X)] for X with density k/(k+x)^2, by adaptive Simpson quadrature.
///
/// The substitution x = e^t - 1 maps the improper integral to
/// int_0^T (t/ln 2) * k e^t / (k - 1 + e^t)^2 dt with an exponentially
/// decaying tail; T is chosen so the truncated mass is far below tol. The
/// range is pre-split into fixed unit-scale panels so the localized bump of
/// the integrand cannot slip through the first refinement test.
inline double quad_expected_log(double k, double tol) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::domain_error("k must be positive and finite");
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");

  const auto integrand = [k](double t) {
    const double et = std::exp(t);
    const double den = k - 1.0 + et;
    return t * k * et / (den * den) / 0.6931471805599453094;  // ln 2
  };
  const double upper = 60.0 + std::log(std::max(k, 1.0));
  constexpr int panels = 64;
  const double width = upper / panels;
  bool converged = true;
  double value = 0.0;
  double a = 0.0, fa = integrand(0.0);
  for (int i = 1; i <= panels; ++i) {
    const double b = width * i;
    const double fb = integrand(b);
    const double fm = integrand(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    value += detail::adaptive_simpson(integrand, a, b, fa, fm, fb, whole,
                                      tol / panels, 60, converged);
    a = b;
    fa = fb;
  }
  if (!converged)
    throw std::runtime_error("quadrature did not converge to the tolerance");
  return value;
}

struct DtGridResult {
  double alpha = 0.0;
  double value = 0.0;
};

/// Brute-force reference for the direct-transmission optimum: scans an
/// n-point grid of the outage-feasible interval, evaluating the outage and
/// throughput formulas directly.
inline DtGridResult grid_optimize_dt(const SystemParams& p, std::size_t n) {
  require_analytic(p);
  if (n < 100) throw std::domain_error("grid size n must be >= 100");

  const double a_min =
      (1.0 - p.theta) * p.gamma_o / (p.theta * p.zeta + (1.0 - p.theta) * p.gamma_o);
  const double step = (1.0 - a_min) / static_cast<double>(n);
  DtGridResult best{0.0, -1.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double a = a_min + static_cast<double>(i) * step;
    if (!(a > 0.0 && a < 1.0)) continue;
    const double outage =
        (1.0 - a) * p.gamma_o / (p.zeta * a + (1.0 - a) * p.gamma_o);
    if (outage > p.theta + 1e-12) continue;
    const double value =
        (1.0 - a) * detail::rate_term(p.zeta * a / (1.0 - a));
    if (value > best.value) best = {a, value};
  }
  return best;
}

struct DfGridResult {
  double alpha = 0.0;
  double beta = 0.0;
  double value = 0.0;
  bool feasible = false;
};

/// Brute-force reference for the relayed optimum, independent of the
/// (kappa, z) decomposition used by the solver: works in raw (alpha, beta)
/// coordinates and evaluates the outage product and the hop throughputs
/// directly.
///
/// A plain n-by-n lattice scan only resolves the optimum to one step, while
/// the constrained maximum always sits on the hop-balance curve
/// esr = erd (possibly at its crossing with the outage cap). The scan is
/// therefore sharpened twice, still by brute force: each alpha column is
/// bisected onto the hop-balance curve, and every column pair between which
/// the cap starts to cut that curve is bisected in alpha to the crossing
/// point.
inline DfGridResult grid_optimize_df(const SystemParams& p, std::size_t n) {
  require_analytic(p);
  if (n < 100) throw std::domain_error("grid size n must be >= 100");

  const double d_gain = std::pow(p.d, -p.mu);
  const double r_gain = std::pow(1.0 - p.d, -p.mu);

  const auto esr_at = [&](double a, double b) {
    return b * detail::rate_term(p.zeta * a * d_gain / b);
  };
  const auto erd_at = [&](double a, double b) {
    const double g = 1.0 - a - b;
    return g * detail::rate_term(p.zeta * a * r_gain / g);
  };
  const auto outage_at = [&](double a, double b) {
    const double ksr = p.zeta * a * d_gain / b;
    const double krd = p.zeta * a * r_gain / (1.0 - a - b);
    return 1.0 - (ksr / (ksr + p.gamma_o)) * (krd / (krd + p.gamma_o));
  };

  // The first hop gains and the relay hop loses as beta grows, so their
  // balance point is the unique root of esr - erd in a column. NaN when the
  // root is not bracketed.
  const auto balance_beta = [&](double a) {
    double lo = 1e-9, hi = 1.0 - a - 1e-9;
    if (esr_at(a, lo) - erd_at(a, lo) > 0.0 ||
        esr_at(a, hi) - erd_at(a, hi) < 0.0)
      return std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (esr_at(a, mid) < erd_at(a, mid))
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  DfGridResult best;
  best.value = -1.0;
  const auto consider = [&](double a, double b) {
    if (std::isnan(b)) return;
    if (outage_at(a, b) > p.theta + 1e-12) return;
    const double esr = esr_at(a, b);
    if (esr > erd_at(a, b) + 1e-9) return;
    const double value = std::min(esr, erd_at(a, b));
    if (value > best.value) best = {a, b, value, true};
  };

  // cap slack along the hop-balance curve, by column index
  std::vector<double> slack(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(n);
    for (std::size_t j = 1; i + j + 1 <= n; ++j) {
      const double b = static_cast<double>(j) / static_cast<double>(n);
      if (outage_at(a, b) > p.theta + 1e-12) continue;
      const double esr = esr_at(a, b);
      if (esr > erd_at(a, b) + 1e-15) continue;  // first hop overruns the relay
      if (esr > best.value) best = {a, b, esr, true};
    }
    const double b_bal = balance_beta(a);
    if (!std::isnan(b_bal)) slack[i] = p.theta - outage_at(a, b_bal);
    consider(a, b_bal);
  }

  // Where the cap starts to cut the balance curve, the optimum can sit at
  // the crossing itself; bisect alpha to it between sign-changing columns.
  for (std::size_t i = 1; i + 2 < n; ++i) {
    if (std::isnan(slack[i]) || std::isnan(slack[i + 1])) continue;
    if ((slack[i] >= 0.0) == (slack[i + 1] >= 0.0)) continue;
    double lo = static_cast<double>(i) / static_cast<double>(n);
    double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    const bool lo_ok = slack[i] >= 0.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double b_bal = balance_beta(mid);
      const bool mid_ok =
          !std::isnan(b_bal) && p.theta - outage_at(mid, b_bal) >= 0.0;
      if (mid_ok == lo_ok)
        lo = mid;
      else
        hi = mid;
    }
    const double a_cross = lo_ok ? lo : hi;  // stay on the feasible side
    consider(a_cross, balance_beta(a_cross));
  }
  return best;
}

/// Worst (largest) undivided central second difference
/// f(x+h) - 2 f(x) + f(x-h) over an n-point grid of [lo, hi]. Values at or
/// below ~ -c*h^2 everywhere certify numeric concavity; a convex stretch
/// shows up as a positive entry.
template <typename F>
double scan_concavity(F&& fn, double lo, double hi, std::size_t n, double h) {
  if (!(lo < hi)) throw std::domain_error("require lo < hi");
  if (n < 10) throw std::domain_error("require n >= 10");
  if (!(h > 0.0)) throw std::domain_error("require h > 0");

  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double x =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double second = fn(x + h) - 2.0 * fn(x) + fn(x - h);
    if (second > worst) worst = second;
  }
  return worst;
}

}  // namespace wpc::oracle
