#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace wpc {

inline constexpr double kLog2E = 1.4426950408889634074;  // log2(e)

namespace detail {

inline void check_scale(double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::domain_error("scale factor k must be positive and finite");
}

}  // namespace detail

/// Density of X = k*H1/H2 at x, where H1, H2 are i.i.d. unit-mean
/// exponentials: k/(k+x)^2.
inline double ratio_pdf(double k, double x) {
  detail::check_scale(k);
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("x must be nonnegative and finite");
  const double s = k + x;
  return k / (s * s);
}

/// Distribution function of X = k*H1/H2: x/(k+x). The median is k.
inline double ratio_cdf(double k, double x) {
  detail::check_scale(k);
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("x must be nonnegative and finite");
  return x / (k + x);
}

/// E[log2(1+X)] for X = k*H1/H2, i.e. log2(1/k)/(1/k - 1).
///
/// The singularity at k = 1 is removable with value log2(e); inputs within
/// 1e-6 of it are routed through a short series in u = 1/k to avoid the 0/0
/// cancellation. Strictly increasing in k.
inline double expected_log2_one_plus(double k) {
  detail::check_scale(k);
  const double u = 1.0 / k;
  if (std::abs(k - 1.0) < 1e-6) {
    const double e = u - 1.0;
    return kLog2E * (1.0 - e / 2.0 + e * e / 3.0);
  }
  return std::log2(u) / (u - 1.0);
}

/// The fading-scaled SIR distribution: X = k*H1/H2 with H1, H2 i.i.d.
/// unit-mean exponential channel power gains.
struct ScaledExpRatio {
  double k;

  explicit ScaledExpRatio(double scale) : k(scale) { detail::check_scale(k); }

  double pdf(double x) const { return ratio_pdf(k, x); }
  double cdf(double x) const { return ratio_cdf(k, x); }
  double mean_log2_one_plus() const { return expected_log2_one_plus(k); }
  double median() const { return k; }
};

/// A single Rayleigh-fading channel power gain (unit-mean exponential).
struct FadingDraw {
  double h;
};

/// Deterministic splittable generator. `Rng(seed, stream)` derives an
/// independent stream per counter value, so per-slot simulation streams do
/// not depend on how slots are chunked across workers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x5851f42d4c957f2dULL)) {}

  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(mix(seed ^ 0x5851f42d4c957f2dULL) + stream)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform draw on [0,1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

/// Inverse-transform exponential draw, h = -ln(1-U). U = 0 maps to h = 0.
inline FadingDraw sample_unit_exponential(Rng& rng) {
  return {-std::log1p(-rng.next_uniform())};
}

/// Exponential draw guarded away from zero so it can serve as a denominator;
/// redraws while h < 1e-300 (probability ~1e-300 per draw).
inline FadingDraw sample_positive_exponential(Rng& rng) {
  double h = sample_unit_exponential(rng).h;
  while (h < 1e-300) h = sample_unit_exponential(rng).h;
  return {h};
}

/// One draw of X = k*H1/H2 from two independent unit-exponential gains.
inline double sample_ratio(Rng& rng, double k) {
  detail::check_scale(k);
  const double h1 = sample_unit_exponential(rng).h;
  const double h2 = sample_positive_exponential(rng).h;
  return k * (h1 / h2);
}

}  // namespace wpc
