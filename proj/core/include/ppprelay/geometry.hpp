#pragma once

#include <optional>
#include <vector>

#include "ppprelay/random.hpp"

namespace ppprelay {

enum class RegionKind { disc, plane };

/// Relay deployment domain. A disc is centred on the source. The plane is
/// infinite for analytic work; Monte Carlo sampling needs a truncation radius.
class Region {
 public:
  static Region disc(double radius);
  static Region plane(std::optional<double> truncation_radius = std::nullopt);

  RegionKind kind() const noexcept { return kind_; }
  bool is_disc() const noexcept { return kind_ == RegionKind::disc; }

  /// Disc radius; throws ConfigurationError on a plane.
  double radius() const;
  std::optional<double> truncation_radius() const noexcept { return truncation_; }

  /// Outer radius used when scattering points: the disc radius, or the
  /// plane truncation radius. Throws ConfigurationError on an untruncated plane.
  double sampling_radius() const;

  Region with_truncation(double truncation_radius) const;

 private:
  Region(RegionKind kind, double radius, std::optional<double> truncation)
      : kind_(kind), radius_(radius), truncation_(truncation) {}

  RegionKind kind_;
  double radius_;
  std::optional<double> truncation_;
};

/// Relay position in polar coordinates about the source.
struct RelayPoint {
  double r_source = 0.0;
  double theta = 0.0;
};

struct Topology {
  std::vector<RelayPoint> relays;
  Region region = Region::disc(1.0);
  double density = 0.0;

  bool empty() const noexcept { return relays.empty(); }
  std::size_t size() const noexcept { return relays.size(); }
};

/// Homogeneous PPP of the given density over the region.
Topology sample_topology(const Region& region, double density, RandomStream& stream);

/// Law of cosines; the destination sits at (r_sd, 0).
double relay_dest_distance(double r_source, double theta, double r_sd) noexcept;

/// pi * radius^2; throws DomainError for the plane.
double region_area(const Region& region);

/// Smallest radius R with exp(-(threshold / snr_budget) * R^alpha) <= tail.
/// Relays beyond R cannot lift even a single subcarrier out of outage with
/// more than `tail` probability.
double default_truncation_radius(double snr_budget, double threshold, double alpha,
                                 double tail = 1e-12);

}  // namespace ppprelay
