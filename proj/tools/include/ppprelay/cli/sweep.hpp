#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ppprelay/cli/config.hpp"
#include "ppprelay/cli/csv.hpp"

namespace ppprelay::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct VerifySummary {
  std::size_t points = 0;
  std::size_t agreeing = 0;
  bool passed() const noexcept { return points == 0 || agreeing * 100 >= points * 95; }
};

struct SweepResult {
  CsvTable table;
  std::vector<std::pair<std::string, std::string>> metadata;
  VerifySummary verify;
};

double connection_probability_view(double outage);

/// One row per grid point, in grid order (scheme, alpha, K, lambda, P_t/N_0).
SweepResult run_sweep(const ExperimentConfig& config);

/// `<key> = <value>` sidecar: tool version, seed, metadata, resolved config.
std::string render_metadata(const ExperimentConfig& config, const SweepResult& result);

}  // namespace ppprelay::cli
