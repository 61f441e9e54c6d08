#include "ppprelay/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ppprelay/analytic.hpp"
#include "ppprelay/errors.hpp"
#include "ppprelay/special_functions.hpp"

namespace ppprelay {

namespace {

constexpr double kPi = std::numbers::pi;

double signed_binomial(unsigned K, unsigned k) {
  const double c = static_cast<double>(binomial(K, k));
  return (k % 2 == 1) ? c : -c;
}

}  // namespace

QuadratureResult delta_k(int k, const SystemParams& params, const Region& region,
                         const QuadratureSettings& q) {
  params.validate();
  q.validate();
  const int K = params.subcarriers;
  if (k < 1 || k > K) {
    throw ConfigurationError("delta_k needs 1 <= k <= K, got k = " + std::to_string(k));
  }
  auto integrand = [&](double r, double theta) {
    const double r_md = relay_dest_distance(r, theta, params.r_sd);
    const double x =
        params.attenuation() * (std::pow(r, params.path_loss) + std::pow(r_md, params.path_loss));
    // 1 - F^k with log F = log1p(-e^-x), keeping precision when F is near 1.
    const double one_minus_fk = -std::expm1(k * std::log1p(-std::exp(-x)));
    return r * (one_minus_fk - std::exp(-K * x));
  };
  const QuadratureSettings inner{q.abs_tol * 0.1 / kPi, std::max(q.rel_tol * 0.1, 5e-14),
                                 q.max_subdivisions};
  double worst_inner = 0.0;
  const bool finite = region.is_disc();
  const double r_max = finite ? region.radius() : 0.0;
  const double scale =
      std::pow(1.0 / params.attenuation(), 1.0 / params.path_loss) + 0.5 * params.r_sd;
  auto radial = [&](double theta) {
    auto along = [&](double r) { return integrand(r, theta); };
    const QuadratureResult res = finite ? integrate(along, 0.0, r_max, inner)
                                        : integrate_semi_infinite(along, scale, inner);
    worst_inner = std::max(worst_inner, res.error);
    return res.value;
  };
  QuadratureResult out = integrate(radial, 0.0, kPi, q);
  out.error += kPi * worst_inner;
  out.value *= 2.0;
  out.error *= 2.0;
  return out;
}

DeltaTable::DeltaTable(const SystemParams& params, const Region& region,
                       const QuadratureSettings& q) {
  params.validate();
  if (params.subcarriers > kMaxPerSubcarrierK) {
    throw InstabilityError("Delta table limited to K <= " + std::to_string(kMaxPerSubcarrierK));
  }
  for (int k = 1; k <= params.subcarriers; ++k) {
    const QuadratureResult d = delta_k(k, params, region, q);
    values_.push_back(d.value);
    errors_.push_back(d.error);
  }
}

double DeltaTable::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double DeltaTable::first_order_sum() const {
  const auto K = static_cast<unsigned>(values_.size());
  double sum = 0.0;
  for (unsigned k = 1; k <= K; ++k) sum += signed_binomial(K, k) * values_[k - 1];
  return sum;
}

double DeltaTable::first_order_error() const {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const auto K = static_cast<unsigned>(values_.size());
  double bound = 0.0;
  for (unsigned k = 1; k <= K; ++k) {
    bound += static_cast<double>(binomial(K, k)) * (errors_[k - 1] + K * eps * values_[k - 1]);
  }
  return bound;
}

double DeltaTable::second_order_sum() const {
  const auto K = static_cast<unsigned>(values_.size());
  double sum = 0.0;
  for (unsigned k = 1; k <= K; ++k) {
    sum += signed_binomial(K, k) * values_[k - 1] * values_[k - 1];
  }
  return sum;
}

double DeltaTable::ratio(double density) const {
  const auto K = static_cast<unsigned>(values_.size());
  double sum = 0.0;
  for (unsigned k = 1; k <= K; ++k) {
    sum += signed_binomial(K, k) * std::exp(-density * values_[k - 1]);
  }
  return sum;
}

double DeltaTable::ratio_approx(double density) const {
  return 1.0 + 0.5 * density * density * second_order_sum();
}

RatioResult outage_ratio(const SystemParams& params, const Region& region, double density,
                         const QuadratureSettings& q) {
  if (!(density >= 0.0)) throw ConfigurationError("relay density must be nonnegative");
  const DeltaTable table(params, region, q);
  RatioResult out{table.ratio(density), 1.0, table.ratio_approx(density), density};
  if (density == 0.0) return out;

  const double bulk = outage(Scheme::bulk, params, region, density, q);
  if (bulk > 0.0) {
    const double ps = outage(Scheme::per_subcarrier, params, region, density, q);
    out.phi_direct = ps / bulk;
    const double tolerance =
        std::max(1e-6, 1e2 * q.rel_tol) * std::max(1.0, density * table.max_value());
    const double gap = std::abs(out.phi_direct - out.phi);
    if (gap > tolerance * std::max(std::abs(out.phi), 1e-300)) {
      throw InstabilityError("outage ratio cross-check failed: delta form " +
                             std::to_string(out.phi) + " vs direct quotient " +
                             std::to_string(out.phi_direct));
    }
  } else {
    out.phi_direct = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double outage_ratio_approx(const SystemParams& params, const Region& region, double density,
                           const QuadratureSettings& q) {
  return DeltaTable(params, region, q).ratio_approx(density);
}

MinDensityResult min_density_for_advantage(double epsilon, const DeltaTable& table) {
  if (!(epsilon > 0.0)) throw DomainError("target ratio epsilon must be positive");
  if (epsilon == 1.0) return {0.0, 0.0};
  const double s2 = table.second_order_sum();
  const double radicand = 2.0 * (epsilon - 1.0) / s2;
  if (!(radicand >= 0.0)) {
    throw DomainError("target ratio " + std::to_string(epsilon) +
                      " inconsistent with the sign of the second-order Delta sum");
  }
  MinDensityResult out{std::sqrt(radicand), 0.0};

  // phi(0) = 1 and phi decreases in density: bracket then bisect.
  double lo = 0.0;
  double hi = std::max(out.approx, 1e-6);
  while (table.ratio(hi) > epsilon) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9) throw NumericalError("outage ratio never reaches the requested target");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (table.ratio(mid) > epsilon ? lo : hi) = mid;
  }
  out.exact = 0.5 * (lo + hi);
  return out;
}

MinDensityResult min_density_for_advantage(double epsilon, const SystemParams& params,
                                           const Region& region, const QuadratureSettings& q) {
  return min_density_for_advantage(epsilon, DeltaTable(params, region, q));
}

DiversityEstimate diversity_slope_log(const std::function<double(double)>& log_outage_curve,
                                      double snr_lo, double snr_hi) {
  if (!(snr_lo > 0.0) || !(snr_hi > snr_lo)) {
    throw ConfigurationError("diversity window needs 0 < snr_lo < snr_hi");
  }
  const double lo = log_outage_curve(snr_lo);
  const double hi = log_outage_curve(snr_hi);
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw UnderflowError("log-outage is not finite inside the diversity window");
  }
  return {-(hi - lo) / (std::log(snr_hi) - std::log(snr_lo)), snr_lo, snr_hi};
}

DiversityEstimate diversity_slope(const std::function<double(double)>& outage_curve,
                                  double snr_lo, double snr_hi) {
  return diversity_slope_log(
      [&](double snr) {
        const double p = outage_curve(snr);
        if (!(p > 0.0)) {
          throw UnderflowError("outage underflowed to zero at P_t/N_0 = " + std::to_string(snr) +
                               "; use the log-domain outage path");
        }
        return std::log(p);
      },
      snr_lo, snr_hi);
}

namespace {

struct BoundTerms {
  double gamma_term;  // without the 1/alpha factor
  double expint_term;
};

BoundTerms bound_terms(const SystemParams& params) {
  params.validate();
  const double a = params.path_loss;
  const double c = params.subcarriers * params.attenuation();
  const double d_alpha = std::pow(params.r_sd, a);
  const double gamma_term = std::pow(1.0 / c, 2.0 / a) * std::exp(-c * std::pow(2.0, a) * d_alpha) *
                            lower_incomplete_gamma(2.0 / a, c * d_alpha);
  const double expint_term = params.r_sd * params.r_sd / a *
                             exp_integral_E((a - 2.0) / a, (1.0 + std::pow(2.0, a)) * c * d_alpha);
  return {gamma_term, expint_term};
}

}  // namespace

double diversity_bound_t1(const SystemParams& params) {
  const BoundTerms t = bound_terms(params);
  return t.gamma_term + t.expint_term;
}

double diversity_bound_t1_exact(const SystemParams& params) {
  const BoundTerms t = bound_terms(params);
  return t.gamma_term / params.path_loss + t.expint_term;
}

QuadratureResult diversity_bound_t1_quadrature(const SystemParams& params,
                                               const QuadratureSettings& q) {
  params.validate();
  const double a = params.path_loss;
  const double c = params.subcarriers * params.attenuation();
  const double d = params.r_sd;
  const double da = std::pow(d, a);
  const double spread = 1.0 + std::pow(2.0, a);
  // Each piece is integrated with its peak exponent factored out so the
  // absolute tolerance applies on the scale of the integrand.
  const double near_scale = std::exp(-c * std::pow(2.0 * d, a));
  const double far_scale = std::exp(-c * spread * da);
  const QuadratureResult near =
      integrate([&](double r) { return r * std::exp(-c * std::pow(r, a)); }, 0.0, d, q);
  const QuadratureResult far = integrate_semi_infinite(
      [&](double x) { return (d + x) * std::exp(-c * spread * (std::pow(d + x, a) - da)); },
      std::pow(1.0 / (c * spread), 1.0 / a), q);
  return {near_scale * near.value + far_scale * far.value,
          near_scale * near.error + far_scale * far.error, near.evaluations + far.evaluations};
}

}  // namespace ppprelay
