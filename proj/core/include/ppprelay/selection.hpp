#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ppprelay/channel.hpp"
#include "ppprelay/geometry.hpp"

namespace ppprelay {

enum class Scheme { bulk, per_subcarrier };

std::string_view scheme_name(Scheme scheme) noexcept;

/// Realized end-to-end SNRs, relay-major: at(m, k).
class SnrMatrix {
 public:
  SnrMatrix() = default;
  SnrMatrix(std::size_t relays, std::size_t subcarriers)
      : relays_(relays), subcarriers_(subcarriers), data_(relays * subcarriers, 0.0) {}
  SnrMatrix(std::size_t relays, std::size_t subcarriers, std::vector<double> row_major);

  std::size_t relays() const noexcept { return relays_; }
  std::size_t subcarriers() const noexcept { return subcarriers_; }
  double& at(std::size_t m, std::size_t k) noexcept { return data_[m * subcarriers_ + k]; }
  double at(std::size_t m, std::size_t k) const noexcept { return data_[m * subcarriers_ + k]; }

 private:
  std::size_t relays_ = 0;
  std::size_t subcarriers_ = 0;
  std::vector<double> data_;
};

SnrMatrix snr_matrix(const Topology& topology, const FadingRealization& fading,
                     const SystemParams& params);

struct SelectionOutcome {
  Scheme scheme = Scheme::bulk;
  std::vector<std::size_t> chosen;  ///< relay serving subcarrier k
  std::vector<double> achieved;     ///< SNR delivered on subcarrier k

  double worst() const noexcept;
};

/// One relay for every subcarrier, maximizing its worst subcarrier.
/// Ties go to the lowest relay index. Throws NoCandidateError when empty.
SelectionOutcome select_bulk(const SnrMatrix& snr);

/// Best relay independently per subcarrier, lowest index on ties.
SelectionOutcome select_per_subcarrier(const SnrMatrix& snr);

SelectionOutcome select(Scheme scheme, const SnrMatrix& snr);

/// True when the topology is empty or the worst selected subcarrier is below s.
bool trial_outage(const Topology& topology, const FadingRealization& fading,
                  const SystemParams& params, Scheme scheme);

struct OutageEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;  ///< sqrt(p_hat (1 - p_hat) / trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double empty_fraction = 0.0;  ///< trials with no relay at all
};

struct SimulationOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Both schemes evaluated on the same realizations.
struct PairedEstimate {
  OutageEstimate bulk;
  OutageEstimate per_subcarrier;
};

/// Monte Carlo outage. Trial i draws topology and fading from
/// RandomStream(seed, i), so the result does not depend on `workers`.
/// Plane regions must carry a truncation radius.
OutageEstimate estimate_outage(const SystemParams& params, const Region& region, double density,
                               Scheme scheme, const SimulationOptions& options);

PairedEstimate estimate_outage_paired(const SystemParams& params, const Region& region,
                                      double density, const SimulationOptions& options);

struct ThroughputEstimate {
  double kappa = 0.0;      ///< K (1 - p_hat)
  double std_error = 0.0;  ///< K * outage std_error
  OutageEstimate outage;
};

ThroughputEstimate estimate_throughput(const SystemParams& params, const Region& region,
                                       double density, Scheme scheme,
                                       const SimulationOptions& options);

}  // namespace ppprelay
