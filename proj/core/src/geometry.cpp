#include "ppprelay/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ppprelay/errors.hpp"

namespace ppprelay {

Region Region::disc(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigurationError("disc radius must be positive and finite, got " +
                             std::to_string(radius));
  }
  return Region(RegionKind::disc, radius, std::nullopt);
}

Region Region::plane(std::optional<double> truncation_radius) {
  if (truncation_radius && !(*truncation_radius > 0.0)) {
    throw ConfigurationError("plane truncation radius must be positive");
  }
  return Region(RegionKind::plane, 0.0, truncation_radius);
}

double Region::radius() const {
  if (kind_ != RegionKind::disc) throw ConfigurationError("plane region has no radius");
  return radius_;
}

double Region::sampling_radius() const {
  if (kind_ == RegionKind::disc) return radius_;
  if (!truncation_) {
    throw ConfigurationError("sampling the infinite plane requires a truncation radius");
  }
  return *truncation_;
}

Region Region::with_truncation(double truncation_radius) const {
  if (kind_ == RegionKind::disc) return *this;
  return plane(truncation_radius);
}

Topology sample_topology(const Region& region, double density, RandomStream& stream) {
  if (!(density >= 0.0) || !std::isfinite(density)) {
    throw ConfigurationError("relay density must be nonnegative and finite");
  }
  const double radius = region.sampling_radius();
  Topology topo{{}, region, density};
  const double mean = density * std::numbers::pi * radius * radius;
  const std::uint64_t count = stream.poisson(mean);
  topo.relays.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    // Radial density proportional to r on [0, radius].
    const double r = radius * std::sqrt(stream.uniform());
    const double theta = 2.0 * std::numbers::pi * stream.uniform();
    topo.relays.push_back({r, theta});
  }
  return topo;
}

double relay_dest_distance(double r_source, double theta, double r_sd) noexcept {
  const double sq = r_sd * r_sd + r_source * r_source - 2.0 * r_sd * r_source * std::cos(theta);
  return std::sqrt(std::max(sq, 0.0));
}

double region_area(const Region& region) {
  if (!region.is_disc()) throw DomainError("the infinite plane has infinite area");
  const double r = region.radius();
  return std::numbers::pi * r * r;
}

double default_truncation_radius(double snr_budget, double threshold, double alpha,
                                 double tail) {
  if (!(snr_budget > 0.0) || !(threshold > 0.0) || !(alpha > 0.0) || !(tail > 0.0 && tail < 1.0)) {
    throw ConfigurationError("invalid arguments for truncation radius");
  }
  return std::pow(-std::log(tail) * snr_budget / threshold, 1.0 / alpha);
}

}  // namespace ppprelay
