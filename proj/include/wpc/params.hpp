#pragma once

#include <cmath>
#include <stdexcept>

namespace wpc {

/// Converts a decibel value to linear scale: 10^(db/10).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Physical constants and constraint bounds shared by every protocol.
///
/// Distances are normalized to the source-destination hop: the relay sits at
/// distance `d` from the source and `1-d` from the destination. `gamma_o` is
/// the linear SIR threshold below which a slot is in outage, `theta` the
/// maximum tolerable outage probability.
struct SystemParams {
  double gamma_o = db_to_linear(-13.0);  ///< linear SIR outage threshold
  double theta = 0.05;                   ///< maximum outage probability, in (0,1)
  double mu = 2.0;                       ///< path-loss exponent, >= 2
  double d = 0.5;                        ///< source-relay distance, in (0,1)
  double zeta = 1.0;                     ///< harvesting efficiency, in (0,1]
  double p_a = 1.0;                      ///< access-point transmit power [W]
  double sigma2 = 0.0;                   ///< receiver noise power [W]
  double r_as = 1.0;                     ///< AP-to-source distance
  double r_ar = 1.0;                     ///< AP-to-relay distance
  double r_ad = 1.0;                     ///< AP-to-destination distance
};

/// Throws std::domain_error unless every field lies in its stated domain.
inline void validate(const SystemParams& p) {
  if (!(p.gamma_o > 0.0) || !std::isfinite(p.gamma_o))
    throw std::domain_error("gamma_o must be positive and finite");
  if (!(p.theta > 0.0 && p.theta < 1.0))
    throw std::domain_error("theta must lie in (0,1)");
  if (!(p.mu >= 2.0) || !std::isfinite(p.mu))
    throw std::domain_error("mu must be >= 2");
  if (!(p.d > 0.0 && p.d < 1.0))
    throw std::domain_error("d must lie in (0,1)");
  if (!(p.zeta > 0.0 && p.zeta <= 1.0))
    throw std::domain_error("zeta must lie in (0,1]");
  if (!(p.p_a > 0.0) || !std::isfinite(p.p_a))
    throw std::domain_error("p_a must be positive and finite");
  if (!(p.sigma2 >= 0.0) || !std::isfinite(p.sigma2))
    throw std::domain_error("sigma2 must be nonnegative and finite");
  if (!(p.r_as > 0.0 && p.r_ar > 0.0 && p.r_ad > 0.0))
    throw std::domain_error("AP distances must be positive");
}

/// The closed forms assume the interference-limited regime with a common
/// AP distance: sigma2 == 0 and r_as == r_ar == r_ad. The simulator accepts
/// the general model; the analytic operations require this reduction.
inline void require_analytic(const SystemParams& p) {
  validate(p);
  if (p.sigma2 != 0.0)
    throw std::domain_error("analytic operations require sigma2 == 0");
  if (p.r_as != p.r_ar || p.r_as != p.r_ad)
    throw std::domain_error("analytic operations require equal AP distances");
}

}  // namespace wpc
