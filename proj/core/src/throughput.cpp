#include "ppprelay/throughput.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "ppprelay/analytic.hpp"
#include "ppprelay/errors.hpp"
#include "ppprelay/golden_section.hpp"

namespace ppprelay {

namespace {

constexpr double kMaxBracket = 65536.0;
constexpr double kSearchTolerance = 1e-6;

// I(K) = integral over the region of (1 - F)^K; outage = exp(-density I).
double coverage(double subcarriers, const SystemParams& params, const Region& region,
                const QuadratureSettings& q) {
  return coverage_integral(region, subcarriers, params, q).value;
}

void check_inputs(const SystemParams& params, double density) {
  params.validate();
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw ConfigurationError("subcarrier optimization needs a positive relay density");
  }
}

int round_relaxed(double k_relaxed, const std::function<double(double)>& kappa) {
  const double lo = std::floor(k_relaxed);
  const double hi = std::ceil(k_relaxed);
  if (lo < 1.0) return static_cast<int>(std::max(hi, 1.0));
  return kappa(hi) >= kappa(lo) ? static_cast<int>(hi) : static_cast<int>(lo);
}

}  // namespace

double throughput(double subcarriers, const SystemParams& params, const Region& region,
                  double density, const QuadratureSettings& q) {
  if (!(subcarriers > 0.0)) throw ConfigurationError("subcarrier count must be positive");
  if (!(density >= 0.0)) throw ConfigurationError("relay density must be nonnegative");
  if (density == 0.0) return 0.0;
  return -subcarriers * std::expm1(-density * coverage(subcarriers, params, region, q));
}

OptimizationResult optimize_k_unconstrained(const SystemParams& params, const Region& region,
                                            double density, const QuadratureSettings& q) {
  check_inputs(params, density);
  const std::function<double(double)> kappa = [&](double k) {
    return k > 0.0 ? throughput(k, params, region, density, q) : 0.0;
  };
  double hi = 2.0;
  while (kappa(hi) >= kappa(hi / 2.0)) {
    hi *= 2.0;
    if (hi > kMaxBracket) {
      throw NumericalError("throughput still increasing at K = " + std::to_string(kMaxBracket) +
                           "; optimum is unbounded for these parameters");
    }
  }
  const ScalarOptimum best = golden_section_maximize(kappa, 0.0, hi, kSearchTolerance);
  OptimizationResult out;
  out.k_relaxed = best.x;
  out.k_opt = round_relaxed(best.x, kappa);
  out.kappa_opt = kappa(out.k_opt);
  return out;
}

OptimizationResult optimize_k_constrained(const SystemParams& params, const Region& region,
                                          double density, double psi,
                                          const QuadratureSettings& q) {
  check_inputs(params, density);
  if (!(psi > 0.0 && psi <= 1.0)) throw ConfigurationError("outage ceiling must lie in (0, 1]");
  const std::function<double(double)> kappa = [&](double k) {
    return k > 0.0 ? throughput(k, params, region, density, q) : 0.0;
  };
  const auto outage_at = [&](double k) { return outage_bulk(params, region, density, k, q); };

  OptimizationResult out;
  out.constraint = psi;
  auto infeasible = [&](double k_relaxed) {
    out.k_relaxed = k_relaxed;
    out.k_opt = 0;
    out.kappa_opt = 0.0;
    out.feasible = false;
    return out;
  };

  if (region.is_disc() && psi < outage_floor(density, region_area(region))) return infeasible(0.0);

  double k_max = kMaxBracket;
  if (psi < 1.0) {
    if (outage_at(1.0) > psi) {
      // Largest admissible K lies below 1.
      double lo = 0.0, hi = 1.0;
      while (hi - lo > kSearchTolerance) {
        const double mid = 0.5 * (lo + hi);
        (outage_at(mid) > psi ? hi : lo) = mid;
      }
      return infeasible(lo);
    }
    double lo = 1.0, hi = 2.0;
    while (outage_at(hi) <= psi) {
      lo = hi;
      hi *= 2.0;
      if (hi > kMaxBracket) {
        throw NumericalError("outage ceiling not reached for K up to " +
                             std::to_string(kMaxBracket));
      }
    }
    while (hi - lo > 1e-9 * hi) {
      const double mid = 0.5 * (lo + hi);
      (outage_at(mid) > psi ? hi : lo) = mid;
    }
    k_max = lo;
  } else {
    k_max = 2.0;
    while (kappa(k_max) >= kappa(k_max / 2.0)) {
      k_max *= 2.0;
      if (k_max > kMaxBracket) throw NumericalError("throughput optimum is unbounded");
    }
  }

  const ScalarOptimum best = golden_section_maximize(kappa, 0.0, k_max, kSearchTolerance);
  out.k_relaxed = best.x;
  out.k_opt = std::max(1, static_cast<int>(std::floor(best.x)));
  out.kappa_opt = kappa(out.k_opt);
  return out;
}

double cutoff_density(double psi, const SystemParams& params, const Region& region,
                      const QuadratureSettings& q) {
  params.validate();
  if (!(psi > 0.0 && psi < 1.0)) throw ConfigurationError("outage ceiling must lie in (0, 1)");
  return -std::log(psi) / coverage(1.0, params, region, q);
}

double cutoff_density_freespace(double psi, const SystemParams& params) {
  params.validate();
  if (!(psi > 0.0 && psi < 1.0)) throw ConfigurationError("outage ceiling must lie in (0, 1)");
  if (params.path_loss != 2.0) throw DomainError("free-space cut-off density needs alpha = 2");
  const double s = params.attenuation();
  return -2.0 * s * std::log(psi) /
         (std::numbers::pi * std::exp(-params.r_sd * params.r_sd * s / 2.0));
}

}  // namespace ppprelay
