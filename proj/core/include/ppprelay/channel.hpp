#pragma once

#include <cstddef>
#include <vector>

#include "ppprelay/geometry.hpp"
#include "ppprelay/random.hpp"

namespace ppprelay {

/// Physical constants of the two-hop link. All ratios are linear.
struct SystemParams {
  double snr_budget = 100.0;  ///< P_t / N_0
  double path_loss = 2.0;     ///< alpha, >= 2
  double threshold = 1.0;     ///< SNR threshold s
  int subcarriers = 4;        ///< K, >= 1
  double r_sd = 5.0;          ///< source-destination distance

  /// Throws ConfigurationError listing every violated constraint.
  void validate() const;

  /// threshold * N_0 / P_t, the scale of every exponent in the fading CDFs.
  double attenuation() const noexcept { return threshold / snr_budget; }
};

/// Rayleigh power gains G[hop][relay][subcarrier], unit-mean exponential.
class FadingRealization {
 public:
  FadingRealization() = default;
  FadingRealization(std::size_t relays, std::size_t subcarriers);

  std::size_t relays() const noexcept { return relays_; }
  std::size_t subcarriers() const noexcept { return subcarriers_; }
  bool empty() const noexcept { return relays_ == 0; }

  /// hop is 0 (source to relay) or 1 (relay to destination).
  double& gain(int hop, std::size_t relay, std::size_t k) noexcept {
    return gains_[index(hop, relay, k)];
  }
  double gain(int hop, std::size_t relay, std::size_t k) const noexcept {
    return gains_[index(hop, relay, k)];
  }

 private:
  std::size_t index(int hop, std::size_t relay, std::size_t k) const noexcept {
    return (static_cast<std::size_t>(hop) * relays_ + relay) * subcarriers_ + k;
  }

  std::size_t relays_ = 0;
  std::size_t subcarriers_ = 0;
  std::vector<double> gains_;
};

/// Draws 2 * |relays| * K gains, hop-major, from the stream.
FadingRealization draw_fading(const Topology& topology, int subcarriers, RandomStream& stream);

/// Received SNR on one hop of length `distance`; +inf at zero distance.
double hop_snr(double snr_budget, double path_loss, double distance, double gain) noexcept;

/// Decode-and-forward end-to-end SNR: the weaker of the two hops.
double end_to_end_snr(const SystemParams& params, const RelayPoint& relay, double g1, double g2);

/// CDF of the end-to-end SNR of one relay at distances (r_sm, r_md).
double e2e_cdf(const SystemParams& params, double r_sm, double r_md, double x);

}  // namespace ppprelay
