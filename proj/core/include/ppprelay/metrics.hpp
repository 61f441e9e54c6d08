#pragma once

#include <functional>
#include <vector>

#include "ppprelay/channel.hpp"
#include "ppprelay/geometry.hpp"
#include "ppprelay/quadrature.hpp"

namespace ppprelay {

/// Area integral over the region of 1 - F^k - (1 - F)^K, with K taken from
/// params. Requires 1 <= k <= K.
QuadratureResult delta_k(int k, const SystemParams& params, const Region& region,
                         const QuadratureSettings& q = {});

/// Delta(1..K) evaluated once per parameter set, plus the two weighted sums
/// that drive the small-density expansion of the outage ratio.
class DeltaTable {
 public:
  DeltaTable(const SystemParams& params, const Region& region, const QuadratureSettings& q = {});

  int subcarriers() const noexcept { return static_cast<int>(values_.size()); }
  double value(int k) const { return values_.at(static_cast<std::size_t>(k - 1)); }
  double error(int k) const { return errors_.at(static_cast<std::size_t>(k - 1)); }
  double max_value() const;

  /// sum_k C(K,k) (-1)^{k+1} Delta(k); zero in exact arithmetic.
  double first_order_sum() const;
  /// Bound on |first_order_sum()| from the quadrature errors and rounding.
  double first_order_error() const;
  /// sum_k C(K,k) (-1)^{k+1} Delta(k)^2; negative whenever phi < 1.
  double second_order_sum() const;

  /// sum_k C(K,k) (-1)^{k+1} exp(-density Delta(k)).
  double ratio(double density) const;
  double ratio_approx(double density) const;

 private:
  std::vector<double> values_;
  std::vector<double> errors_;
};

struct RatioResult {
  double phi = 1.0;         ///< Delta-sum form
  double phi_direct = 1.0;  ///< quotient of the two outage probabilities (NaN if bulk underflows)
  double phi_approx = 1.0;  ///< second-order small-density expansion
  double density = 0.0;
};

/// Outage ratio per-subcarrier / bulk. Both routes are evaluated and must
/// agree; InstabilityError otherwise.
RatioResult outage_ratio(const SystemParams& params, const Region& region, double density,
                         const QuadratureSettings& q = {});

double outage_ratio_approx(const SystemParams& params, const Region& region, double density,
                           const QuadratureSettings& q = {});

struct MinDensityResult {
  double approx = 0.0;  ///< sqrt(2 (epsilon - 1) / second_order_sum)
  double exact = 0.0;   ///< bisection root of phi(density) = epsilon
};

/// Smallest density at which the outage ratio drops to epsilon.
/// DomainError when epsilon > 1 (negative radicand) or epsilon <= 0.
MinDensityResult min_density_for_advantage(double epsilon, const SystemParams& params,
                                           const Region& region, const QuadratureSettings& q = {});
MinDensityResult min_density_for_advantage(double epsilon, const DeltaTable& table);

struct DiversityEstimate {
  double slope = 0.0;  ///< decades of outage per decade of SNR
  double snr_lo = 0.0;
  double snr_hi = 0.0;
};

/// Finite-window diversity slope of an outage curve. UnderflowError when
/// the curve returns 0; use diversity_slope_log with a log-outage path.
DiversityEstimate diversity_slope(const std::function<double(double)>& outage_curve,
                                  double snr_lo, double snr_hi);
DiversityEstimate diversity_slope_log(const std::function<double(double)>& log_outage_curve,
                                      double snr_lo, double snr_hi);

/// Closed form of the radial bound integral used to show unbounded
/// diversity on the plane:
///   (P_t/(K s N0))^(2/alpha) e^(-K s N0 (2 r_SD)^alpha / P_t) gamma(2/alpha, K s N0 r_SD^alpha / P_t)
///   + (r_SD^2 / alpha) E_{(alpha-2)/alpha}((1 + 2^alpha) K s N0 r_SD^alpha / P_t).
/// The first term lacks the 1/alpha factor that the substitution t = c r^alpha
/// produces, so this overstates the integral; see diversity_bound_t1_exact.
double diversity_bound_t1(const SystemParams& params);

/// Same closed form with the first term divided by alpha; equals the integral.
double diversity_bound_t1_exact(const SystemParams& params);

/// integral_0^inf r exp(-(K s N0 / P_t)(r^alpha + (2 max(r, r_SD))^alpha)) dr.
QuadratureResult diversity_bound_t1_quadrature(const SystemParams& params,
                                               const QuadratureSettings& q = {});

}  // namespace ppprelay
