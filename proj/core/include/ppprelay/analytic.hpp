#pragma once

#include <cstdint>
#include <span>

#include "ppprelay/channel.hpp"
#include "ppprelay/geometry.hpp"
#include "ppprelay/quadrature.hpp"
#include "ppprelay/selection.hpp"

namespace ppprelay {

/// Largest K accepted by the per-subcarrier alternating sums.
inline constexpr int kMaxPerSubcarrierK = 64;

/// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(unsigned n, unsigned k);

/// sum_{k=1}^{K} C(K,k) (-1)^{k+1} in exact integer arithmetic (always 1).
std::int64_t alternating_binomial_sum(unsigned K);

/// r * exp(-(n s / snr_budget) (r^alpha + r_mD^alpha)), the per-relay
/// probability density of a usable n-subcarrier link in polar coordinates.
/// n may be real.
double integrand_H(double n, double r, double theta, const SystemParams& params);

/// integral over theta in [0, pi], r in [0, radius] of integrand_H.
QuadratureResult u_disc(double radius, double n, const SystemParams& params,
                        const QuadratureSettings& q = {});

/// Same over r in [0, inf), via r = L t / (1 - t).
QuadratureResult u_plane(double n, const SystemParams& params, const QuadratureSettings& q = {});

/// integral over the region of (1 - F(s))^n, i.e. 2 u. Planes are treated
/// as infinite regardless of any truncation radius.
QuadratureResult coverage_integral(const Region& region, double n, const SystemParams& params,
                                   const QuadratureSettings& q = {});

/// Closed form of coverage_integral on the plane at alpha = 2:
/// pi P_t / (2 n s) exp(-r_SD^2 n s / (2 P_t)).
double coverage_integral_freespace(double n, const SystemParams& params);

/// Per-subcarrier outage from coverage integrals I(1..K) and their error
/// estimates. Inner and outer alternating sums use compensated summation;
/// throws InstabilityError when the propagated error is not small against
/// the result or the result leaves [0, 1].
double per_subcarrier_outage(double density, std::span<const double> coverage,
                             std::span<const double> coverage_error);

double outage_bulk_disc(const SystemParams& params, double density, double radius,
                        const QuadratureSettings& q = {});
double log_outage_bulk_disc(const SystemParams& params, double density, double radius,
                            const QuadratureSettings& q = {});
double outage_ps_disc(const SystemParams& params, double density, double radius,
                      const QuadratureSettings& q = {});

double outage_bulk_plane(const SystemParams& params, double density,
                         const QuadratureSettings& q = {});
double log_outage_bulk_plane(const SystemParams& params, double density,
                             const QuadratureSettings& q = {});
double outage_ps_plane(const SystemParams& params, double density,
                       const QuadratureSettings& q = {});

/// alpha = 2 closed forms on the infinite plane; DomainError otherwise.
double outage_bulk_plane_freespace(const SystemParams& params, double density);
double log_outage_bulk_plane_freespace(const SystemParams& params, double density);
double outage_ps_plane_freespace(const SystemParams& params, double density);

/// Bulk outage with a real-valued subcarrier count (for the relaxed K).
double outage_bulk(const SystemParams& params, const Region& region, double density,
                   double subcarriers, const QuadratureSettings& q = {});

/// Region and scheme dispatch at the integer K in params.
double outage(Scheme scheme, const SystemParams& params, const Region& region, double density,
              const QuadratureSettings& q = {});

/// High-SNR coefficient of the disc asymptotics; alpha must be 2, 4 or 6.
double tau_alpha(double alpha, double r_sd, double radius);

struct AsymptoticOutage {
  double value = 0.0;
  bool in_validity_region = false;
};

/// Bulk high-SNR expansion. Valid while K s tau / P_t < 1.
AsymptoticOutage asymptotic_bulk_disc(const SystemParams& params, double density, double radius);

/// Per-subcarrier high-SNR expansion, returned unclamped; flagged valid when
/// it lies in [floor, 1].
AsymptoticOutage asymptotic_ps_disc(const SystemParams& params, double density, double radius);

/// Void probability exp(-density * area).
double outage_floor(double density, double area);

}  // namespace ppprelay
