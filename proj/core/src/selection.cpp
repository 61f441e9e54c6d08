#include "ppprelay/selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "ppprelay/errors.hpp"

namespace ppprelay {

std::string_view scheme_name(Scheme scheme) noexcept {
  return scheme == Scheme::bulk ? "bulk" : "ps";
}

SnrMatrix::SnrMatrix(std::size_t relays, std::size_t subcarriers, std::vector<double> row_major)
    : relays_(relays), subcarriers_(subcarriers), data_(std::move(row_major)) {
  if (data_.size() != relays_ * subcarriers_) {
    throw std::invalid_argument("SnrMatrix: data size does not match dimensions");
  }
}

SnrMatrix snr_matrix(const Topology& topology, const FadingRealization& fading,
                     const SystemParams& params) {
  const std::size_t k_count = fading.subcarriers();
  SnrMatrix snr(topology.size(), k_count);
  for (std::size_t m = 0; m < topology.size(); ++m) {
    const auto& relay = topology.relays[m];
    for (std::size_t k = 0; k < k_count; ++k) {
      snr.at(m, k) = end_to_end_snr(params, relay, fading.gain(0, m, k), fading.gain(1, m, k));
    }
  }
  return snr;
}

double SelectionOutcome::worst() const noexcept {
  double w = std::numeric_limits<double>::infinity();
  for (double a : achieved) w = std::min(w, a);
  return w;
}

SelectionOutcome select_bulk(const SnrMatrix& snr) {
  if (snr.relays() == 0) throw NoCandidateError("bulk selection: no candidate relay");
  std::size_t best = 0;
  double best_min = -1.0;
  for (std::size_t m = 0; m < snr.relays(); ++m) {
    double row_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < snr.subcarriers(); ++k) row_min = std::min(row_min, snr.at(m, k));
    if (row_min > best_min) {
      best_min = row_min;
      best = m;
    }
  }
  SelectionOutcome out{Scheme::bulk, std::vector<std::size_t>(snr.subcarriers(), best), {}};
  out.achieved.reserve(snr.subcarriers());
  for (std::size_t k = 0; k < snr.subcarriers(); ++k) out.achieved.push_back(snr.at(best, k));
  return out;
}

SelectionOutcome select_per_subcarrier(const SnrMatrix& snr) {
  if (snr.relays() == 0) throw NoCandidateError("per-subcarrier selection: no candidate relay");
  SelectionOutcome out{Scheme::per_subcarrier, {}, {}};
  out.chosen.reserve(snr.subcarriers());
  out.achieved.reserve(snr.subcarriers());
  for (std::size_t k = 0; k < snr.subcarriers(); ++k) {
    std::size_t best = 0;
    for (std::size_t m = 1; m < snr.relays(); ++m) {
      if (snr.at(m, k) > snr.at(best, k)) best = m;
    }
    out.chosen.push_back(best);
    out.achieved.push_back(snr.at(best, k));
  }
  return out;
}

SelectionOutcome select(Scheme scheme, const SnrMatrix& snr) {
  return scheme == Scheme::bulk ? select_bulk(snr) : select_per_subcarrier(snr);
}

bool trial_outage(const Topology& topology, const FadingRealization& fading,
                  const SystemParams& params, Scheme scheme) {
  if (topology.empty()) return true;
  return select(scheme, snr_matrix(topology, fading, params)).worst() < params.threshold;
}

namespace {

struct TrialCounts {
  std::uint64_t bulk_outages = 0;
  std::uint64_t ps_outages = 0;
  std::uint64_t empty = 0;
};

// One trial, both schemes, without materializing selection outcomes.
// `per_k_best` is scratch of size K.
void run_trial(const SystemParams& params, const Region& region, double density,
               std::uint64_t seed, std::uint64_t trial, std::vector<double>& per_k_best, TrialCounts& counts) {
  RandomStream stream(seed, trial);
  const Topology topo = sample_topology(region, density, stream);
  if (topo.empty()) {
    ++counts.empty;
    ++counts.bulk_outages;
    ++counts.ps_outages;
    return;
  }
  const FadingRealization fading = draw_fading(topo, params.subcarriers, stream);
  const auto k_count = static_cast<std::size_t>(params.subcarriers);
  std::fill(per_k_best.begin(), per_k_best.end(), 0.0);
  double bulk_best = 0.0;
  for (std::size_t m = 0; m < topo.size(); ++m) {
    const auto& relay = topo.relays[m];
    const double r_md = relay_dest_distance(relay.r_source, relay.theta, params.r_sd);
    double row_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < k_count; ++k) {
      const double g = std::min(
          hop_snr(params.snr_budget, params.path_loss, relay.r_source, fading.gain(0, m, k)),
          hop_snr(params.snr_budget, params.path_loss, r_md, fading.gain(1, m, k)));
      row_min = std::min(row_min, g);
      per_k_best[k] = std::max(per_k_best[k], g);
    }
    bulk_best = std::max(bulk_best, row_min);
  }
  double ps_worst = std::numeric_limits<double>::infinity();
  for (double g : per_k_best) ps_worst = std::min(ps_worst, g);
  if (bulk_best < params.threshold) ++counts.bulk_outages;
  if (ps_worst < params.threshold) ++counts.ps_outages;
}

TrialCounts run_trials(const SystemParams& params, const Region& region, double density,
                       const SimulationOptions& options) {
  params.validate();
  if (options.trials < 1) throw ConfigurationError("trials must be >= 1");
  if (!(density >= 0.0)) throw ConfigurationError("relay density must be nonnegative");
  (void)region.sampling_radius();  // reject an untruncated plane up front

  const unsigned workers = std::max(1u, options.workers);
  std::vector<TrialCounts> partial(workers);
  std::atomic<std::uint64_t> next_chunk{0};
  constexpr std::uint64_t kChunk = 256;
  const std::uint64_t chunks = (options.trials + kChunk - 1) / kChunk;

  auto worker = [&](unsigned id) {
    const auto k_count = static_cast<std::size_t>(params.subcarriers);
    std::vector<double> best(k_count);
    TrialCounts& counts = partial[id];
    for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
      const std::uint64_t end = std::min(options.trials, (c + 1) * kChunk);
      for (std::uint64_t t = c * kChunk; t < end; ++t) {
        run_trial(params, region, density, options.seed, t, best, counts);
      }
    }
  };

  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
  }

  TrialCounts total;
  for (const auto& p : partial) {
    total.bulk_outages += p.bulk_outages;
    total.ps_outages += p.ps_outages;
    total.empty += p.empty;
  }
  return total;
}

OutageEstimate make_estimate(std::uint64_t outages, std::uint64_t empty,
                             const SimulationOptions& options) {
  const double n = static_cast<double>(options.trials);
  const double p = static_cast<double>(outages) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), options.trials, options.seed,
          static_cast<double>(empty) / n};
}

}  // namespace

PairedEstimate estimate_outage_paired(const SystemParams& params, const Region& region,
                                      double density, const SimulationOptions& options) {
  const TrialCounts counts = run_trials(params, region, density, options);
  return {make_estimate(counts.bulk_outages, counts.empty, options),
          make_estimate(counts.ps_outages, counts.empty, options)};
}

OutageEstimate estimate_outage(const SystemParams& params, const Region& region, double density,
                               Scheme scheme, const SimulationOptions& options) {
  const PairedEstimate both = estimate_outage_paired(params, region, density, options);
  return scheme == Scheme::bulk ? both.bulk : both.per_subcarrier;
}

ThroughputEstimate estimate_throughput(const SystemParams& params, const Region& region,
                                       double density, Scheme scheme,
                                       const SimulationOptions& options) {
  const OutageEstimate outage = estimate_outage(params, region, density, scheme, options);
  const double k = static_cast<double>(params.subcarriers);
  return {k * (1.0 - outage.p_hat), k * outage.std_error, outage};
}

}  // namespace ppprelay
