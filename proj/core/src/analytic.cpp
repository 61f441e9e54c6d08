#include "ppprelay/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppprelay/errors.hpp"

namespace ppprelay {

namespace {

constexpr double kPi = std::numbers::pi;

double power(double x, double alpha) {
  if (alpha == 2.0) return x * x;
  if (alpha == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  return std::pow(x, alpha);
}

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_density(double density) {
  if (!(density >= 0.0) || !std::isfinite(density)) {
    throw ConfigurationError("relay density must be nonnegative and finite");
  }
}

void require_freespace(const SystemParams& params, const char* what) {
  if (params.path_loss != 2.0) {
    throw DomainError(std::string(what) + " is only defined for alpha = 2");
  }
}

void require_ps_k(int K) {
  if (K > kMaxPerSubcarrierK) {
    throw InstabilityError("per-subcarrier alternating sum limited to K <= " +
                           std::to_string(kMaxPerSubcarrierK));
  }
}

// Polar double integral of f(r, theta) over theta in [0, pi] and r in
// [0, r_max] (or [0, inf) with the rational map when r_max is infinite).
template <class F>
QuadratureResult integrate_polar(F&& f, double r_max, double scale, const QuadratureSettings& q) {
  const QuadratureSettings inner{q.abs_tol * 0.1 / kPi, std::max(q.rel_tol * 0.1, 5e-14),
                                 q.max_subdivisions};
  double worst_inner = 0.0;
  auto radial = [&](double theta) {
    auto along = [&](double r) { return f(r, theta); };
    const QuadratureResult res = std::isfinite(r_max)
                                     ? integrate(along, 0.0, r_max, inner)
                                     : integrate_semi_infinite(along, scale, inner);
    worst_inner = std::max(worst_inner, res.error);
    return res.value;
  };
  QuadratureResult outer = integrate(radial, 0.0, kPi, q);
  outer.error += kPi * worst_inner;
  return outer;
}

// Settings for the coverage integrals feeding a K-term alternating sum:
// C(k, n) amplifies their errors by up to 2^K.
QuadratureSettings alternating_settings(const QuadratureSettings& q, int K) {
  const double amplification = std::ldexp(1.0, K);
  return {std::max(q.abs_tol / amplification, 1e-15), std::max(q.rel_tol / amplification, 5e-13),
          q.max_subdivisions * 4};
}

double per_subcarrier_from_region(const SystemParams& params, const Region& region,
                                  double density, const QuadratureSettings& q) {
  params.validate();
  check_density(density);
  require_ps_k(params.subcarriers);
  if (density == 0.0) return 1.0;
  const QuadratureSettings tight = alternating_settings(q, params.subcarriers);
  std::vector<double> values, errors;
  for (int n = 1; n <= params.subcarriers; ++n) {
    const QuadratureResult I = coverage_integral(region, n, params, tight);
    values.push_back(I.value);
    errors.push_back(I.error);
  }
  return per_subcarrier_outage(density, values, errors);
}

}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // c * (n - k + i) / i is an integer; divide out gcd(c, i) first.
    const std::uint64_t g = std::gcd(c, static_cast<std::uint64_t>(i));
    c /= g;
    const std::uint64_t factor = (n - k + i) / (i / g);
    if (__builtin_mul_overflow(c, factor, &c)) {
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
  }
  return c;
}

std::int64_t alternating_binomial_sum(unsigned K) {
  std::int64_t total = 0;
  for (unsigned k = 1; k <= K; ++k) {
    const auto c = static_cast<std::int64_t>(binomial(K, k));
    total += (k % 2 == 1) ? c : -c;
  }
  return total;
}

double integrand_H(double n, double r, double theta, const SystemParams& params) {
  const double r_md = relay_dest_distance(r, theta, params.r_sd);
  const double spread = power(r, params.path_loss) + power(r_md, params.path_loss);
  return r * std::exp(-n * params.attenuation() * spread);
}

QuadratureResult u_disc(double radius, double n, const SystemParams& params,
                        const QuadratureSettings& q) {
  if (!(radius > 0.0)) throw ConfigurationError("disc radius must be positive");
  if (!(n > 0.0)) throw ConfigurationError("subcarrier count must be positive");
  q.validate();
  return integrate_polar([&](double r, double th) { return integrand_H(n, r, th, params); },
                         radius, 0.0, q);
}

QuadratureResult u_plane(double n, const SystemParams& params, const QuadratureSettings& q) {
  if (!(n > 0.0)) throw ConfigurationError("subcarrier count must be positive");
  q.validate();
  // Decay length of exp(-(n s / P_t) r^alpha), plus room for the lobe
  // around the destination.
  const double decay = std::pow(1.0 / (n * params.attenuation()), 1.0 / params.path_loss);
  const double scale = decay + 0.5 * params.r_sd;
  return integrate_polar([&](double r, double th) { return integrand_H(n, r, th, params); },
                         std::numeric_limits<double>::infinity(), scale, q);
}

QuadratureResult coverage_integral(const Region& region, double n, const SystemParams& params,
                                   const QuadratureSettings& q) {
  QuadratureResult u = region.is_disc() ? u_disc(region.radius(), n, params, q)
                                        : u_plane(n, params, q);
  u.value *= 2.0;
  u.error *= 2.0;
  return u;
}

double coverage_integral_freespace(double n, const SystemParams& params) {
  require_freespace(params, "free-space coverage integral");
  const double c = n * params.attenuation();
  return kPi / (2.0 * c) * std::exp(-params.r_sd * params.r_sd * c / 2.0);
}

double per_subcarrier_outage(double density, std::span<const double> coverage,
                             std::span<const double> coverage_error) {
  const auto K = static_cast<unsigned>(coverage.size());
  require_ps_k(static_cast<int>(K));
  if (K == 0) throw ConfigurationError("per-subcarrier outage needs K >= 1");
  constexpr double eps = std::numeric_limits<double>::epsilon();

  CompensatedSum outer;
  double outer_error = 0.0;
  for (unsigned k = 1; k <= K; ++k) {
    // integral of 1 - F^k by inclusion-exclusion over the coverage integrals.
    CompensatedSum exponent;
    double exponent_error = 0.0;
    for (unsigned n = 1; n <= k; ++n) {
      const double c = static_cast<double>(binomial(k, n));
      const double term = c * coverage[n - 1];
      exponent.add((n % 2 == 1) ? term : -term);
      exponent_error += c * (coverage_error[n - 1] + eps * std::abs(coverage[n - 1]));
    }
    const double w = static_cast<double>(binomial(K, k));
    const double e = std::exp(-density * exponent.value());
    outer.add((k % 2 == 1) ? w * e : -w * e);
    outer_error += w * e * (density * exponent_error + eps);
  }
  const double result = outer.value();
  if (result < -1e-9 || result > 1.0 + 1e-9 || outer_error > 1e-2 * std::abs(result)) {
    char detail[96];
    std::snprintf(detail, sizeof detail, "K = %d, result %.3e, error bound %.3e", K, result,
                  outer_error);
    throw InstabilityError(std::string("per-subcarrier alternating sum lost precision (") +
                           detail + "); reduce K or tighten the quadrature");
  }
  return std::clamp(result, 0.0, 1.0);
}

double log_outage_bulk_disc(const SystemParams& params, double density, double radius,
                            const QuadratureSettings& q) {
  params.validate();
  check_density(density);
  if (density == 0.0) return 0.0;
  return -2.0 * density * u_disc(radius, params.subcarriers, params, q).value;
}

double outage_bulk_disc(const SystemParams& params, double density, double radius,
                        const QuadratureSettings& q) {
  return std::exp(log_outage_bulk_disc(params, density, radius, q));
}

double outage_ps_disc(const SystemParams& params, double density, double radius,
                      const QuadratureSettings& q) {
  return per_subcarrier_from_region(params, Region::disc(radius), density, q);
}

double log_outage_bulk_plane(const SystemParams& params, double density,
                             const QuadratureSettings& q) {
  params.validate();
  check_density(density);
  if (density == 0.0) return 0.0;
  return -2.0 * density * u_plane(params.subcarriers, params, q).value;
}

double outage_bulk_plane(const SystemParams& params, double density,
                         const QuadratureSettings& q) {
  return std::exp(log_outage_bulk_plane(params, density, q));
}

double outage_ps_plane(const SystemParams& params, double density, const QuadratureSettings& q) {
  return per_subcarrier_from_region(params, Region::plane(), density, q);
}

double log_outage_bulk_plane_freespace(const SystemParams& params, double density) {
  params.validate();
  check_density(density);
  require_freespace(params, "free-space bulk outage");
  if (density == 0.0) return 0.0;
  return -density * coverage_integral_freespace(params.subcarriers, params);
}

double outage_bulk_plane_freespace(const SystemParams& params, double density) {
  return std::exp(log_outage_bulk_plane_freespace(params, density));
}

double outage_ps_plane_freespace(const SystemParams& params, double density) {
  params.validate();
  check_density(density);
  require_freespace(params, "free-space per-subcarrier outage");
  require_ps_k(params.subcarriers);
  if (density == 0.0) return 1.0;
  std::vector<double> values, errors(static_cast<std::size_t>(params.subcarriers), 0.0);
  for (int n = 1; n <= params.subcarriers; ++n) {
    values.push_back(coverage_integral_freespace(n, params));
  }
  return per_subcarrier_outage(density, values, errors);
}

double outage_bulk(const SystemParams& params, const Region& region, double density,
                   double subcarriers, const QuadratureSettings& q) {
  check_density(density);
  if (density == 0.0) return 1.0;
  return std::exp(-density * coverage_integral(region, subcarriers, params, q).value);
}

double outage(Scheme scheme, const SystemParams& params, const Region& region, double density,
              const QuadratureSettings& q) {
  if (scheme == Scheme::per_subcarrier) {
    return per_subcarrier_from_region(params, region, density, q);
  }
  params.validate();
  return outage_bulk(params, region, density, params.subcarriers, q);
}

double tau_alpha(double alpha, double r_sd, double radius) {
  const double d2 = r_sd * r_sd;
  const double v2 = radius * radius;
  if (alpha == 2.0) return d2 + v2;
  if (alpha == 4.0) return d2 * d2 + 2.0 * d2 * v2 + 2.0 / 3.0 * v2 * v2;
  if (alpha == 6.0) return 0.5 * (2.0 * d2 + v2) * (d2 * d2 + 4.0 * d2 * v2 + v2 * v2);
  throw DomainError("asymptotic coefficient is tabulated only for alpha in {2, 4, 6}");
}

AsymptoticOutage asymptotic_bulk_disc(const SystemParams& params, double density, double radius) {
  params.validate();
  check_density(density);
  const double tau = tau_alpha(params.path_loss, params.r_sd, radius);
  const double correction = params.subcarriers * params.attenuation() * tau;
  const double value = std::exp(-density * kPi * radius * radius * (1.0 - correction));
  return {value, correction < 1.0};
}

AsymptoticOutage asymptotic_ps_disc(const SystemParams& params, double density, double radius) {
  params.validate();
  check_density(density);
  const double tau = tau_alpha(params.path_loss, params.r_sd, radius);
  const double mass = density * kPi * radius * radius;
  const double floor = std::exp(-mass);
  const double bracket =
      1.0 + params.subcarriers * std::expm1(mass * params.attenuation() * tau);
  const double value = floor * bracket;
  return {value, value >= floor && value <= 1.0};
}

double outage_floor(double density, double area) {
  check_density(density);
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw DomainError("outage floor needs a finite positive area");
  }
  return std::exp(-density * area);
}

}  // namespace ppprelay
