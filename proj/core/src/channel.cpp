#include "ppprelay/channel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ppprelay/errors.hpp"

namespace ppprelay {

void SystemParams::validate() const {
  std::ostringstream errs;
  if (!(snr_budget > 0.0) || !std::isfinite(snr_budget)) errs << " snr_budget must be > 0;";
  if (!(path_loss >= 2.0) || !std::isfinite(path_loss)) errs << " path_loss must be >= 2;";
  if (!(threshold > 0.0) || !std::isfinite(threshold)) errs << " threshold must be > 0;";
  if (subcarriers < 1) errs << " subcarriers must be >= 1;";
  if (!(r_sd > 0.0) || !std::isfinite(r_sd)) errs << " r_sd must be > 0;";
  const auto msg = errs.str();
  if (!msg.empty()) throw ConfigurationError("invalid system parameters:" + msg);
}

FadingRealization::FadingRealization(std::size_t relays, std::size_t subcarriers)
    : relays_(relays), subcarriers_(subcarriers), gains_(2 * relays * subcarriers, 0.0) {}

FadingRealization draw_fading(const Topology& topology, int subcarriers, RandomStream& stream) {
  if (subcarriers < 1) throw ConfigurationError("subcarriers must be >= 1");
  const auto k_count = static_cast<std::size_t>(subcarriers);
  FadingRealization fading(topology.size(), k_count);
  for (int hop = 0; hop < 2; ++hop) {
    for (std::size_t m = 0; m < topology.size(); ++m) {
      for (std::size_t k = 0; k < k_count; ++k) fading.gain(hop, m, k) = stream.exponential();
    }
  }
  return fading;
}

double hop_snr(double snr_budget, double path_loss, double distance, double gain) noexcept {
  if (gain == 0.0) return 0.0;
  if (distance == 0.0) return std::numeric_limits<double>::infinity();
  return snr_budget * gain * std::pow(distance, -path_loss);
}

double end_to_end_snr(const SystemParams& params, const RelayPoint& relay, double g1, double g2) {
  const double r_md = relay_dest_distance(relay.r_source, relay.theta, params.r_sd);
  return std::min(hop_snr(params.snr_budget, params.path_loss, relay.r_source, g1),
                  hop_snr(params.snr_budget, params.path_loss, r_md, g2));
}

double e2e_cdf(const SystemParams& params, double r_sm, double r_md, double x) {
  if (!(x > 0.0)) return 0.0;
  const double spread = std::pow(r_sm, params.path_loss) + std::pow(r_md, params.path_loss);
  return -std::expm1(-(x / params.snr_budget) * spread);
}

}  // namespace ppprelay
