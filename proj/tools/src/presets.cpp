#include "ppprelay/cli/presets.hpp"

#include <functional>
#include <string>

#include "ppprelay/cli/config.hpp"

namespace ppprelay::cli {

namespace {

struct Preset {
  std::string_view name;
  std::string_view summary;
  std::function<void(ExperimentConfig&)> apply;
};

// Shared geometry of every preset: s = 1, disc radius 5, r_SD = 5.
void common(ExperimentConfig& c) {
  c.region = RegionKind::disc;
  c.sigma = 5.0;
  c.r_sd = 5.0;
  c.threshold = 1.0;
}

// Abscissae are round grids: 9 points per four decades of P_t/N_0,
// 4 points per decade of density.
const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"fig2", "bulk throughput over (K, density), alpha = 2, P_t/N_0 = 100",
       [](ExperimentConfig& c) {
         common(c);
         c.run_mode = Mode::analytic;
         c.scheme = SchemeChoice::bulk;
         c.alpha = {2.0};
         c.snr = {100.0};
         c.subcarriers.clear();
         for (int k = 1; k <= 20; ++k) c.subcarriers.push_back(k);
         c.lambda = parse_sweep("log:0.01:10:13");
       }},
      {"fig3", "bulk outage vs P_t/N_0, simulated and analytic, density 1",
       [](ExperimentConfig& c) {
         common(c);
         c.run_mode = Mode::simulate;
         c.verify = true;
         c.scheme = SchemeChoice::bulk;
         c.lambda = {1.0};
         c.subcarriers = {2, 4, 8};
         c.alpha = {2.0, 4.0};
         c.snr = parse_sweep("log:1:1e4:9");
         c.trials = 100000;
       }},
      {"fig4", "per-subcarrier outage vs P_t/N_0, simulated and analytic, density 1",
       [](ExperimentConfig& c) {
         common(c);
         c.run_mode = Mode::simulate;
         c.verify = true;
         c.scheme = SchemeChoice::per_subcarrier;
         c.lambda = {1.0};
         c.subcarriers = {2, 4, 8};
         c.alpha = {2.0, 4.0};
         c.snr = parse_sweep("log:1:1e4:9");
         c.trials = 100000;
       }},
      {"fig5", "connection probability of both schemes vs density, K = 4, P_t/N_0 = 100",
       [](ExperimentConfig& c) {
         common(c);
         c.run_mode = Mode::analytic;
         c.scheme = SchemeChoice::both;
         c.connection = true;
         c.subcarriers = {4};
         c.alpha = {2.0};
         c.snr = {100.0};
         c.lambda = parse_sweep("log:0.001:1:13");
       }},
      {"fig6", "density needed for a ratio target 1 - eps_bar, exact and approximate, K = 4",
       [](ExperimentConfig& c) {
         common(c);
         c.run_mode = Mode::ratio;
         c.scheme = SchemeChoice::both;
         c.subcarriers = {4};
         c.alpha = {2.0};
         c.snr = {100.0};
         c.epsilon.clear();
         for (double eps_bar : parse_sweep("log:1e-6:0.1:11")) c.epsilon.push_back(1.0 - eps_bar);
       }},
      {"fig7", "optimal K and throughput vs density, alpha in {2, 4}, P_t/N_0 = 100",
       [](ExperimentConfig& c) {
         common(c);
         c.run_mode = Mode::optimize_k;
         c.scheme = SchemeChoice::bulk;
         c.alpha = {2.0, 4.0};
         c.snr = {100.0};
         c.psi.clear();
         c.lambda = parse_sweep("log:0.01:10:13");
       }},
      {"fig8", "optimal K under outage ceilings {1e-2, 1e-3, 1e-5} vs density, alpha = 2",
       [](ExperimentConfig& c) {
         common(c);
         c.run_mode = Mode::optimize_k;
         c.scheme = SchemeChoice::bulk;
         c.alpha = {2.0};
         c.snr = {100.0};
         c.psi = {1e-2, 1e-3, 1e-5};
         c.lambda = parse_sweep("log:0.01:10:13");
       }},
  };
  return table;
}

}  // namespace

std::vector<std::string_view> preset_names() {
  std::vector<std::string_view> names;
  for (const auto& p : presets()) names.push_back(p.name);
  return names;
}

void apply_preset(std::string_view name, ExperimentConfig& config) {
  for (const auto& p : presets()) {
    if (p.name == name) {
      p.apply(config);
      config.preset = std::string(name);
      return;
    }
  }
  std::string known;
  for (const auto& p : presets()) known += std::string(known.empty() ? "" : ", ") + std::string(p.name);
  throw ConfigurationError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace ppprelay::cli
